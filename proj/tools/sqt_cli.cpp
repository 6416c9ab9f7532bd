// Command-line driver: quadratic-matrix-equation and square-root experiments
// plus the property-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 no convergence,
// 3 ill-conditioned / singular, 4 bad input.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqt/errors.hpp"
#include "sqt/solvers.hpp"
#include "sqt/verify.hpp"

namespace {

using namespace sqt;

enum class Repr { P1, P0, Qt, Symbol };

Repr parse_repr(const std::string& s) {
    if (s == "p1") return Repr::P1;
    if (s == "p0") return Repr::P0;
    if (s == "qt") return Repr::Qt;
    if (s == "symbol") return Repr::Symbol;
    throw BadInput("unknown representation '" + s + "' (want p1|p0|qt|symbol)");
}

QmeVariant parse_variant(const std::string& s) {
    if (s == "natural") return QmeVariant::Natural;
    if (s == "traditional") return QmeVariant::Traditional;
    if (s == "ubased") return QmeVariant::UBased;
    throw BadInput("unknown variant '" + s + "' (want natural|traditional|ubased)");
}

struct Row {
    double cpu = 0.0;
    std::size_t iterations = 0;
    std::size_t symbol_size = 0;
    std::size_t correction_rows = 0;
    std::size_t correction_cols = 0;
    std::size_t correction_rank = 0;
    double error = 0.0;
};

Row row_from_report(const SolveReport& r) {
    return Row{r.elapsed_seconds, r.iterations,      r.symbol_size,
               r.correction_rows, r.correction_cols, r.correction_rank,
               r.residual};
}

void print_row(std::ostream& os, const Row& row, bool csv) {
    std::ostringstream size;
    size << row.correction_rows << "x" << row.correction_cols;
    std::ostringstream err;
    err << std::setprecision(17) << row.error;
    std::ostringstream cpu;
    cpu << std::fixed << std::setprecision(3) << row.cpu;
    if (csv) {
        os << "cpu,iterations,symbol_size,correction_size,correction_rank,error\n"
           << cpu.str() << "," << row.iterations << "," << row.symbol_size << ","
           << size.str() << "," << row.correction_rank << "," << err.str() << "\n";
    } else {
        os << std::left << std::setw(10) << "CPU" << std::setw(12) << "Iterations"
           << std::setw(13) << "Symbol size" << std::setw(17) << "Correction size"
           << std::setw(17) << "Correction rank" << "Error\n";
        os << std::left << std::setw(10) << cpu.str() << std::setw(12)
           << row.iterations << std::setw(13) << row.symbol_size << std::setw(17)
           << size.str() << std::setw(17) << row.correction_rank << err.str()
           << "\n";
    }
}

void emit(const std::string& output, const Row& row, bool csv) {
    if (output.empty()) {
        print_row(std::cout, row, csv);
    } else {
        std::ofstream os(output);
        if (!os) throw BadInput("cannot open output file '" + output + "'");
        print_row(os, row, csv);
    }
}

// One coefficient of the hard-coded experiment: T(sym) + corner * e1 e1^T,
// expressed in the requested representation.
SqtMatrix preset_matrix(const SymmetricSymbol& sym, double corner, Repr repr) {
    SqtMatrix t = sqt_toeplitz(sym);
    if (corner != 0.0) {
        t.correction.U = Eigen::MatrixXd::Constant(1, 1, corner);
        t.correction.V = Eigen::MatrixXd::Constant(1, 1, 1.0);
    }
    switch (repr) {
        case Repr::Qt: return t;
        case Repr::P0: return sqt_convert(t, Mode::Algebra, 0.0);
        default: return sqt_convert(t, Mode::Algebra, 1.0);
    }
}

SqtMatrix to_repr(const SqtMatrix& m, Repr repr) {
    switch (repr) {
        case Repr::Qt: return sqt_convert(m, Mode::Toeplitz, 0.0);
        case Repr::P0: return sqt_convert(m, Mode::Algebra, 0.0);
        default: return sqt_convert(m, Mode::Algebra, 1.0);
    }
}

// The algebra containing the matrix must absorb the whole correction for the
// symbol-only path to describe the same matrix.
SymmetricSymbol symbol_path_input(const SqtMatrix& m) {
    const SqtMatrix p1 = sqt_convert(m, Mode::Algebra, 1.0);
    if (p1.correction.rank() != 0)
        throw BadInput(
            "matrix is not an element of the alpha = 1 algebra; the symbol-only "
            "path does not apply");
    return p1.symbol();
}

struct QmeOptions {
    std::string variant = "natural";
    std::string repr = "p0";
    std::string format = "table";
    std::string output;
    std::string input;
    std::string preset = "qme-paper";
    double tol = 5e-15;
};

int run_qme(const QmeOptions& opt) {
    const Repr repr = parse_repr(opt.repr);
    const QmeVariant variant = parse_variant(opt.variant);
    if (!(opt.tol > 0.0 && opt.tol < 1.0)) throw BadInput("tol must lie in (0, 1)");

    SqtMatrix a, b, c;
    if (!opt.input.empty()) {
        std::ifstream is(opt.input);
        if (!is) throw BadInput("cannot open input file '" + opt.input + "'");
        a = read_sqt(is);
        b = read_sqt(is);
        c = read_sqt(is);
        if (repr != Repr::Symbol) {
            a = to_repr(a, repr);
            b = to_repr(b, repr);
            c = to_repr(c, repr);
        }
    } else {
        if (opt.preset != "qme-paper")
            throw BadInput("unknown preset '" + opt.preset + "'");
        const SymmetricSymbol sa({0.10, 0.10}), sb({0.23, 0.08}), sc({0.11, 0.10});
        const Repr build = repr == Repr::Symbol ? Repr::P1 : repr;
        a = preset_matrix(sa, 0.10, build);
        b = preset_matrix(sb, 0.08, build);
        c = preset_matrix(sc, 0.10, build);
    }

    Row row;
    if (repr == Repr::Symbol || repr == Repr::P1) {
        const SymmetricSymbol sa = symbol_path_input(a);
        const SymmetricSymbol sb = symbol_path_input(b);
        const SymmetricSymbol sc = symbol_path_input(c);
        const QmeSymbolSolution sol =
            qme_symbol_solve(sa, sb, sc, variant, opt.tol);
        row = row_from_report(sol.report);
        if (repr == Repr::P1) {
            // assemble G = P_1(g) and report the matrix residual
            const SqtMatrix g = sqt_from_symbol(1.0, sol.g);
            const SqtMatrix resid = sqt_sub(
                sqt_add(sqt_add(sqt_mul(a, sqt_mul(g, g)), sqt_mul(b, g)), c), g);
            row.error = sqt_norm_inf(resid);
        }
    } else {
        QmeProblem p{a, b, c, variant, opt.tol};
        const std::string warn = p.validate();
        if (!warn.empty()) std::cerr << "warning: " << warn << "\n";
        const QmeSolution sol = qme_solve(p);
        row = row_from_report(sol.report);
    }
    emit(opt.output, row, opt.format == "csv");
    return 0;
}

struct SqrtOptions {
    std::string repr = "p1";
    std::string format = "table";
    std::string output;
    std::string input;
    std::string preset = "sqrt-paper";
    double delta = 1e-1;
    double tol = 5e-15;
};

int run_sqrt(const SqrtOptions& opt) {
    const Repr repr = parse_repr(opt.repr);
    if (!(opt.tol > 0.0 && opt.tol < 1.0)) throw BadInput("tol must lie in (0, 1)");
    if (!(opt.delta > 0.0)) throw BadInput("delta must be positive");

    SqtMatrix a;
    if (!opt.input.empty()) {
        std::ifstream is(opt.input);
        if (!is) throw BadInput("cannot open input file '" + opt.input + "'");
        a = read_sqt(is);
        if (repr != Repr::Symbol) a = to_repr(a, repr);
    } else {
        if (opt.preset != "sqrt-paper")
            throw BadInput("unknown preset '" + opt.preset + "'");
        const SymmetricSymbol sym({5.0 + opt.delta, 4.0, 3.0, 2.0, 1.0});
        a = repr == Repr::Symbol ? sqt_toeplitz(sym)
                                 : to_repr(sqt_toeplitz(sym), repr);
    }

    Row row;
    if (repr == Repr::Symbol) {
        const SymmetricSymbol sym = symbol_path_input(a);
        const auto t0 = std::chrono::steady_clock::now();
        const SymmetricSymbol g = sym_map_grid(
            sym, [](double x) { return std::sqrt(x); }, opt.tol);
        row.cpu = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
        row.symbol_size = g.degree() + 1;
        row.error = sym_sub(sym_mul(g, g), sym).max_coeff();
    } else {
        const SqrtSolution sol = sqrt_solve(a, opt.tol);
        row = row_from_report(sol.report);
    }
    emit(opt.output, row, opt.format == "csv");
    return 0;
}

struct VerifyOptions {
    std::string suite = "all";
    std::uint64_t seed = 7;
};

int run_verify(const VerifyOptions& opt) {
    std::vector<CheckResult> results;
    if (opt.suite == "basis")
        results = verify_basis();
    else if (opt.suite == "algebra")
        results = verify_algebra(opt.seed);
    else if (opt.suite == "sqt")
        results = verify_sqt(opt.seed);
    else if (opt.suite == "finite")
        results = verify_finite();
    else if (opt.suite == "all")
        results = verify_all(opt.seed);
    else
        throw BadInput("unknown suite '" + opt.suite +
                       "' (want basis|algebra|sqt|finite|all)");

    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << std::left
                  << std::setw(36) << r.name << " " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-infinite quasi-Toeplitz matrix arithmetic experiments"};
    app.require_subcommand(1);

    QmeOptions qme;
    CLI::App* cmd_qme = app.add_subcommand("qme", "solve A X^2 + B X + C = X");
    cmd_qme->add_option("--variant", qme.variant, "natural|traditional|ubased");
    cmd_qme->add_option("--repr", qme.repr, "p1|p0|qt|symbol");
    cmd_qme->add_option("--tol", qme.tol, "stop tolerance");
    cmd_qme->add_option("--format", qme.format, "table|csv");
    cmd_qme->add_option("--output", qme.output, "write the report here");
    cmd_qme->add_option("--input", qme.input, "file with three SQT1 records (A, B, C)");
    cmd_qme->add_option("--preset", qme.preset, "named experiment (qme-paper)");

    SqrtOptions sq;
    CLI::App* cmd_sqrt = app.add_subcommand("sqrt", "matrix square root of A");
    cmd_sqrt->add_option("--repr", sq.repr, "p1|p0|qt|symbol");
    cmd_sqrt->add_option("--delta", sq.delta, "distance of the symbol from singularity");
    cmd_sqrt->add_option("--tol", sq.tol, "stop tolerance (relative)");
    cmd_sqrt->add_option("--format", sq.format, "table|csv");
    cmd_sqrt->add_option("--output", sq.output, "write the report here");
    cmd_sqrt->add_option("--input", sq.input, "file with one SQT1 record");
    cmd_sqrt->add_option("--preset", sq.preset, "named experiment (sqrt-paper)");

    VerifyOptions ver;
    CLI::App* cmd_verify = app.add_subcommand("verify", "run property suites");
    cmd_verify->add_option("--suite", ver.suite, "basis|algebra|sqt|finite|all");
    cmd_verify->add_option("--seed", ver.seed, "seed for randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (cmd_qme->parsed()) return run_qme(qme);
        if (cmd_sqrt->parsed()) return run_sqrt(sq);
        return run_verify(ver);
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IllConditioned& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroOnCircle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularSmallBlock& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
