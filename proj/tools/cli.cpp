#include "cli.hpp"

#include "psplit/comparison.hpp"
#include "psplit/double_splitting.hpp"
#include "psplit/error.hpp"
#include "psplit/linalg.hpp"
#include "psplit/matrix_io.hpp"
#include "psplit/solver.hpp"
#include "psplit/splitting.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <deque>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace psplit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    Tolerances tol;
    double rank_cutoff = 0.0;
    std::string format = "text";
    std::string out_path;
    bool echo_inputs = false;

    std::string file;
    std::string a, u, p, r, s, b, x0, x1;
    std::string p1, r1, s1, p2, r2, s2;
    std::string theorem;
    bool square_corollary = false;
    bool trace = false;
};

/// Collects one command's output in both renderings.
struct Output {
    Json json = Json::object();
    std::ostringstream text;
};

std::string num(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(std::span<const double> v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ' ';
        s += num(v[i]);
    }
    return s;
}

Json matrix_json(const Matrix& m)
{
    return Json{{"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", std::vector<double>(m.data().begin(), m.data().end())}};
}

/// Loaded inputs in command-line order, for --echo-inputs.
struct Inputs {
    std::deque<std::pair<std::string, Matrix>> items;  // stable references

    const Matrix& load(const std::string& name, const std::string& path)
    {
        items.emplace_back(name, read_matrix_file(path));
        return items.back().second;
    }
    Vector load_vector(const std::string& name, const std::string& path)
    {
        Vector v = read_vector_file(path);
        items.emplace_back(name, Matrix::column(v));
        return v;
    }

    void echo(Output& o) const
    {
        Json j = Json::object();
        for (const auto& [name, m] : items) {
            j[name] = matrix_json(m);
            o.text << "# input " << name << '\n' << format_matrix(m);
        }
        o.json["inputs"] = std::move(j);
    }
};

void put(Output& o, const std::string& key, double v)
{
    o.json[key] = v;
    o.text << key << ": " << num(v) << '\n';
}

void put(Output& o, const std::string& key, bool v)
{
    o.json[key] = v;
    o.text << key << ": " << yes_no(v) << '\n';
}

void put(Output& o, const std::string& key, std::size_t v)
{
    o.json[key] = v;
    o.text << key << ": " << v << '\n';
}

void put(Output& o, const std::string& key, std::string_view v)
{
    o.json[key] = std::string(v);
    o.text << key << ": " << v << '\n';
}

void put(Output& o, const std::string& key, std::span<const double> v)
{
    o.json[key] = std::vector<double>(v.begin(), v.end());
    o.text << key << ": " << join(v) << '\n';
}

void put(Output& o, const std::string& key, const std::optional<bool>& v)
{
    if (v)
        put(o, key, *v);
    else {
        o.json[key] = nullptr;
        o.text << key << ": n/a\n";
    }
}

Tolerances effective_tolerances(const Options& opt, const CLI::App& app)
{
    Tolerances t = opt.tol;
    if (app.count("--rank-cutoff") > 0)
        t.rank_rel_cutoff = opt.rank_cutoff;
    t.validate();
    return t;
}

void cmd_pinv(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& a = in.load("A", opt.file);
    const Matrix x = pinv(a, tol);
    const PenroseResiduals res = penrose_residuals(a, x);
    const std::size_t r = rank(a, tol);

    o.json["command"] = "pinv";
    o.json["rows"] = x.rows();
    o.json["cols"] = x.cols();
    o.json["entries"] = std::vector<double>(x.data().begin(), x.data().end());
    o.json["rank"] = r;
    o.json["residual_axa"] = res.axa;
    o.json["residual_xax"] = res.xax;
    o.json["residual_ax_symmetric"] = res.ax_symmetric;
    o.json["residual_xa_symmetric"] = res.xa_symmetric;

    // Text output is itself a valid matrix file.
    o.text << "# pseudoinverse of " << opt.file << '\n'
           << "# rank: " << r << '\n'
           << "# residual_axa: " << num(res.axa) << '\n'
           << "# residual_xax: " << num(res.xax) << '\n'
           << "# residual_ax_symmetric: " << num(res.ax_symmetric) << '\n'
           << "# residual_xa_symmetric: " << num(res.xa_symmetric) << '\n'
           << format_matrix(x);
    if (opt.echo_inputs)
        in.echo(o);
}

void cmd_spectrum(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& m = in.load("M", opt.file);
    const Spectrum sp = eigenvalues(m, tol);
    Vector re, im;
    for (const auto& z : sp.eigenvalues) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    put(o, "command", std::string_view("spectrum"));
    put(o, "spectral_radius", sp.spectral_radius);
    put(o, "eigenvalues_re", re);
    put(o, "eigenvalues_im", im);
    if (sp.dominant_vector)
        put(o, "dominant_vector", *sp.dominant_vector);
    if (opt.echo_inputs)
        in.echo(o);
}

void cmd_classify_single(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& a = in.load("A", opt.a);
    const Matrix& u = in.load("U", opt.u);
    const ProperSplitting s = make_proper_splitting(a, u, tol);
    const SplittingClass cls = classify_single(s, tol);
    const ProjectorIdentityReport proj = check_projector_identities(s, tol);

    put(o, "command", std::string_view("classify-single"));
    put(o, "class", to_string(cls));
    put(o, "range_residual", proj.range_residual);
    put(o, "null_residual", proj.null_residual);
    put(o, "projector_identities_pass", proj.passed);
    if (cls != SplittingClass::ProperOnly) {
        const SemimonotoneReport sm = check_semimonotone_equivalence(s, tol);
        put(o, "a_pinv_nonneg", sm.a_pinv_nonneg);
        put(o, "a_pinv_v_nonneg", sm.a_pinv_v_nonneg);
        put(o, "rho_u_pinv_v", sm.rho);
        put(o, "rho_below_one", sm.rho_below_one);
        put(o, "equivalence_agrees", sm.all_agree);
    }
    if (opt.echo_inputs)
        in.echo(o);
}

void cmd_classify_double(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& a = in.load("A", opt.a);
    const Matrix& p = in.load("P", opt.p);
    const Matrix& r = in.load("R", opt.r);
    const Matrix& s = in.load("S", opt.s);
    const ProperDoubleSplitting d = make_pds(a, p, r, s, tol);
    const DoubleClassPredicates pr = class_predicates(d, tol);
    const ConvergenceReport conv = check_convergence(d, tol);

    put(o, "command", std::string_view("classify-double"));
    put(o, "class", to_string(classify_double(d, tol)));
    put(o, "p_pinv_nonneg", pr.p_pinv_nonneg);
    put(o, "r_nonneg", pr.r_nonneg);
    put(o, "minus_s_nonneg", pr.minus_s_nonneg);
    put(o, "p_pinv_r_nonneg", pr.p_pinv_r_nonneg);
    put(o, "minus_p_pinv_s_nonneg", pr.minus_p_pinv_s_nonneg);
    put(o, "rho_w", conv.rho_w);
    put(o, "rho_p_pinv_v", conv.rho_single);
    put(o, "a_pinv_nonneg", conv.a_pinv_nonneg);
    put(o, "biconditional_holds", conv.biconditional_holds);
    put(o, "convergence_predicted", conv.convergence_predicted);
    put(o, "convergence_observed", conv.convergence_observed);
    if (opt.echo_inputs)
        in.echo(o);
}

void put_trace(Output& o, const IterationTrace& t, bool full)
{
    put(o, "iterations_used", t.iterations_used);
    put(o, "final_step", t.residual_history.empty() ? 0.0 : t.residual_history.back());
    put(o, "distance_to_reference", t.distance_to_reference);
    put(o, "converged", t.converged);
    put(o, "diverged", t.diverged);
    put(o, "limit", t.limit);
    put(o, "reference_solution", t.reference_solution);
    if (t.x0_in_null_v)
        put(o, "x0_in_null_v", *t.x0_in_null_v);
    if (!full)
        return;
    o.json["residual_history"] = t.residual_history;
    o.json["iterates"] = t.iterates;
    o.text << "# k step iterate\n";
    for (std::size_t k = 0; k < t.iterates.size(); ++k)
        o.text << k + 1 << ' ' << num(t.residual_history[k]) << ' ' << join(t.iterates[k]) << '\n';
}

void cmd_solve_single(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& a = in.load("A", opt.a);
    const Matrix& u = in.load("U", opt.u);
    const Vector b = in.load_vector("b", opt.b);
    const ProperSplitting s = make_proper_splitting(a, u, tol);
    const IterationTrace t = opt.x0.empty()
                                 ? solve_single(s, b, tol)
                                 : solve_single(s, b, in.load_vector("x0", opt.x0), tol);
    put(o, "command", std::string_view("solve-single"));
    put_trace(o, t, opt.trace);
    if (opt.echo_inputs)
        in.echo(o);
}

void cmd_solve_double(const Options& opt, const Tolerances& tol, Output& o)
{
    Inputs in;
    const Matrix& a = in.load("A", opt.a);
    const Matrix& p = in.load("P", opt.p);
    const Matrix& r = in.load("R", opt.r);
    const Matrix& s = in.load("S", opt.s);
    const Vector b = in.load_vector("b", opt.b);
    const ProperDoubleSplitting d = make_pds(a, p, r, s, tol);
    const Vector zero(a.cols(), 0.0);
    const Vector x0 = opt.x0.empty() ? zero : in.load_vector("x0", opt.x0);
    const Vector x1 = opt.x1.empty() ? x0 : in.load_vector("x1", opt.x1);
    const IterationTrace t = solve_double(d, b, x0, x1, tol);
    put(o, "command", std::string_view("solve-double"));
    put_trace(o, t, opt.trace);
    if (opt.echo_inputs)
        in.echo(o);
}

void cmd_compare(const Options& opt, const Tolerances& tol, Output& o)
{
    const auto theorem = theorem_from_string(opt.theorem);
    if (!theorem)
        throw Error(ErrorCode::InvalidConfig, "unknown theorem '" + opt.theorem + "'");
    Inputs in;
    const Matrix& a = in.load("A", opt.a);
    const Matrix& p1 = in.load("P1", opt.p1);
    const Matrix& r1 = in.load("R1", opt.r1);
    const Matrix& s1 = in.load("S1", opt.s1);
    const Matrix& p2 = in.load("P2", opt.p2);
    const Matrix& r2 = in.load("R2", opt.r2);
    const Matrix& s2 = in.load("S2", opt.s2);
    const ProperDoubleSplitting d1 = make_pds(a, p1, r1, s1, tol);
    const ProperDoubleSplitting d2 = make_pds(a, p2, r2, s2, tol);
    const ComparisonReport rep =
        compare(*theorem, d1, d2, tol, ComparisonOptions{opt.square_corollary});

    put(o, "command", std::string_view("compare"));
    put(o, "theorem", to_string(rep.theorem));
    put(o, "square_mode", rep.square_mode);
    put(o, "d1_class", to_string(classify_double(d1, tol)));
    put(o, "d2_class", to_string(classify_double(d2, tol)));

    Json hyps = Json::array();
    o.text << "hypotheses:\n";
    for (const auto& h : rep.hypotheses) {
        hyps.push_back(Json{{"label", h.label}, {"holds", h.holds}, {"residual", h.residual}});
        o.text << "  " << h.label << ' ' << yes_no(h.holds) << ' ' << num(h.residual) << '\n';
    }
    o.json["hypotheses"] = std::move(hyps);
    put(o, "branch_used", to_string(rep.branch_used));
    put(o, "rho1", rep.rho1);
    put(o, "rho2", rep.rho2);
    put(o, "conclusion_predicted", rep.conclusion_predicted);
    put(o, "conclusion_observed", rep.conclusion_observed);
    if (rep.r_order_implies_branch_i)
        put(o, "r_order_implies_branch_i", *rep.r_order_implies_branch_i);
    if (opt.echo_inputs)
        in.echo(o);
}

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Parse: return kParse;
    case ErrorCode::NonFinite:
    case ErrorCode::DecompositionFailure: return kNumerical;
    case ErrorCode::InvalidConfig: return kUsage;
    case ErrorCode::NotSquare:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NotProper:
    case ErrorCode::DecompositionMismatch:
    case ErrorCode::HypothesisUnmet:
    case ErrorCode::DifferentA:
    case ErrorCode::NotInvertible: return kInvalidSplitting;
    }
    return kNumerical;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Proper single and double splittings of rectangular matrices", "psplit"};
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", opt.out_path, "Write the report to this path instead of stdout");
    app.add_flag("--echo-inputs", opt.echo_inputs, "Include the input matrices in the report");
    app.add_option("--tol-nonneg", opt.tol.nonneg_slack, "Slack for entrywise >= 0 tests");
    app.add_option("--tol-eq", opt.tol.eq_abs_tol, "Entrywise matrix equality tolerance");
    app.add_option("--tol-spectral", opt.tol.spectral_tol, "Spectral comparison tolerance");
    app.add_option("--tol-solve", opt.tol.solve_tol, "Iterative solver tolerance");
    app.add_option("--max-iter", opt.tol.max_iter, "Iteration cap");
    app.add_option("--rank-cutoff", opt.rank_cutoff, "Relative singular value cutoff");

    std::function<void(const Tolerances&, Output&)> action;

    auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose inverse with Penrose residuals");
    pinv_cmd->add_option("file", opt.file, "Matrix file")->required();
    pinv_cmd->callback([&] { action = [&](const Tolerances& t, Output& o) { cmd_pinv(opt, t, o); }; });

    auto* spec_cmd = app.add_subcommand("spectrum", "Eigenvalues and spectral radius");
    spec_cmd->add_option("file", opt.file, "Square matrix file")->required();
    spec_cmd->callback(
        [&] { action = [&](const Tolerances& t, Output& o) { cmd_spectrum(opt, t, o); }; });

    auto add_single = [&](CLI::App* c) {
        c->add_option("--A", opt.a, "Matrix A")->required();
        c->add_option("--U", opt.u, "Splitting matrix U")->required();
    };
    auto add_double = [&](CLI::App* c) {
        c->add_option("--A", opt.a, "Matrix A")->required();
        c->add_option("--P", opt.p, "Matrix P")->required();
        c->add_option("--R", opt.r, "Matrix R")->required();
        c->add_option("--S", opt.s, "Matrix S")->required();
    };

    auto* classify = app.add_subcommand("classify", "Validate and classify a splitting");
    classify->require_subcommand(1);
    auto* cls_single = classify->add_subcommand("single", "A = U - V");
    add_single(cls_single);
    cls_single->callback(
        [&] { action = [&](const Tolerances& t, Output& o) { cmd_classify_single(opt, t, o); }; });
    auto* cls_double = classify->add_subcommand("double", "A = P - R + S");
    add_double(cls_double);
    cls_double->callback(
        [&] { action = [&](const Tolerances& t, Output& o) { cmd_classify_double(opt, t, o); }; });

    auto* solve = app.add_subcommand("solve", "Run a splitting iteration towards A^+ b");
    solve->require_subcommand(1);
    auto* solve_single_cmd = solve->add_subcommand("single", "x_{k+1} = U^+V x_k + U^+b");
    add_single(solve_single_cmd);
    solve_single_cmd->add_option("--b", opt.b, "Right-hand side vector file")->required();
    solve_single_cmd->add_option("--x0", opt.x0, "Initial vector file");
    solve_single_cmd->add_flag("--trace", opt.trace, "Dump every iterate");
    solve_single_cmd->callback(
        [&] { action = [&](const Tolerances& t, Output& o) { cmd_solve_single(opt, t, o); }; });
    auto* solve_double_cmd =
        solve->add_subcommand("double", "x_{k+1} = P^+R x_k - P^+S x_{k-1} + P^+b");
    add_double(solve_double_cmd);
    solve_double_cmd->add_option("--b", opt.b, "Right-hand side vector file")->required();
    solve_double_cmd->add_option("--x0", opt.x0, "Initial vector file");
    solve_double_cmd->add_option("--x1", opt.x1, "Second initial vector file (defaults to x0)");
    solve_double_cmd->add_flag("--trace", opt.trace, "Dump every iterate");
    solve_double_cmd->callback(
        [&] { action = [&](const Tolerances& t, Output& o) { cmd_solve_double(opt, t, o); }; });

    auto* cmp = app.add_subcommand("compare", "Check a spectral radius comparison theorem");
    cmp->add_option("theorem", opt.theorem, "regular-vs-weak | weak-vs-regular | weak-vs-weak")
        ->required()
        ->check(CLI::IsMember({"regular-vs-weak", "weak-vs-regular", "weak-vs-weak"}));
    for (auto [flag, target] : {std::pair{"--A", &opt.a}, {"--P1", &opt.p1}, {"--R1", &opt.r1},
                                {"--S1", &opt.s1}, {"--P2", &opt.p2}, {"--R2", &opt.r2},
                                {"--S2", &opt.s2}})
        cmp->add_option(flag, *target, std::string("Matrix ") + (flag + 2))->required();
    cmp->add_flag("--square-corollary", opt.square_corollary,
                  "Square nonsingular A: use ordinary inverses");
    cmp->callback([&] { action = [&](const Tolerances& t, Output& o) { cmd_compare(opt, t, o); }; });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Output o;
    try {
        action(effective_tolerances(opt, app), o);
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    }

    const std::string rendered = opt.format == "json" ? o.json.dump(2) + "\n" : o.text.str();
    if (opt.out_path.empty()) {
        out << rendered;
    } else {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << opt.out_path << '\n';
            return kParse;
        }
        f << rendered;
    }
    return kOk;
}

} // namespace psplit::cli
