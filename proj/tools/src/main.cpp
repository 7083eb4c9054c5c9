#include "json_io.hpp"

#include "torsionforge/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>

namespace tf = torsionforge;
using tf::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;
constexpr int kExitSolver = 4;

struct Options {
    std::string format = "text";
    double tol = -1.0;  // resolved per command
    std::uint64_t seed = 0x5eed5eedULL;
    bool seed_given = false;
};

double resolve_tol(const Options& opt, double command_default) {
    if (opt.tol > 0.0) return opt.tol;
    if (const char* env = std::getenv("TORSION_FORGE_TOL")) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) return v;
        } catch (const std::exception&) {
            throw tf::InvalidInputError("TORSION_FORGE_TOL is not a number");
        }
    }
    return command_default;
}

std::string complex_str(tf::Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

void print_report(const Options& opt, const json& j, const std::string& text) {
    if (opt.format == "json")
        std::cout << tf::io::to_canonical_string(j);
    else
        std::cout << text;
}

int cmd_gram(const Options& opt, const std::string& file) {
    const tf::TetShape shape = tf::io::parse_tet_shape(tf::io::load_file(file));
    const tf::Mat4 g = tf::gram(shape);
    const tf::Complex det = g.determinant();

    json out = json::object();
    out["command"] = "gram";
    std::string kind = shape.kind == tf::ShapeKind::Angles
                           ? "angles"
                           : (shape.kind == tf::ShapeKind::Lengths ? "lengths" : "mixed");
    out["kind"] = kind;
    json gm = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(tf::io::complex_to_json(g(r, c)));
        gm.push_back(row);
    }
    out["gram"] = gm;
    out["det"] = tf::io::complex_to_json(det);
    json cof = json::array();
    for (int s = 1; s <= 4; ++s) {
        json row = json::array();
        for (int t = 1; t <= 4; ++t) row.push_back(tf::io::complex_to_json(tf::gram_cofactor(g, s, t)));
        cof.push_back(row);
    }
    out["cofactors"] = cof;

    std::ostringstream text;
    text << "Gram matrix (" << kind << " shape)\n";
    for (int r = 0; r < 4; ++r) {
        text << "  ";
        for (int c = 0; c < 4; ++c) text << complex_str(g(r, c)) << (c < 3 ? "  " : "\n");
    }
    text << "det = " << complex_str(det) << "\n";

    if (shape.kind == tf::ShapeKind::Angles) {
        const tf::HyperidealCheck chk = tf::validate_hyperideal(shape);
        out["hyperideal"] = chk.valid;
        if (!chk.valid) {
            json msgs = json::array();
            for (const auto& m : chk.messages) msgs.push_back(m);
            out["diagnostics"] = msgs;
            text << "shape is not hyperideal:\n";
            for (const auto& m : chk.messages) text << "  " << m << "\n";
        } else {
            const tf::TetShape lens = tf::lengths_from_angles(shape);
            json lengths = json::array();
            for (int i = 0; i < 6; ++i) lengths.push_back(lens.u[i].real());
            out["edge_lengths"] = lengths;
            text << "edge lengths:";
            for (int i = 0; i < 6; ++i) text << " " << lens.u[i].real();
            text << "\n";
        }
    } else if (shape.kind == tf::ShapeKind::Lengths) {
        const tf::TetShape angs = tf::angles_from_lengths(shape);
        json alpha = json::array();
        for (int i = 0; i < 6; ++i) alpha.push_back(angs.u[i].imag());
        out["dihedral_angles"] = alpha;
        text << "dihedral angles:";
        for (int i = 0; i < 6; ++i) text << " " << angs.u[i].imag();
        text << "\n";
    }
    print_report(opt, out, text.str());
    return kExitOk;
}

int cmd_block(const Options& opt, const std::string& file, const std::string& kind,
              const std::string& method_name) {
    const double tol = resolve_tol(opt, 1e-9);
    const json doc = tf::io::load_file(file);
    tf::TorsionMethod method = tf::TorsionMethod::Both;
    if (method_name == "closed")
        method = tf::TorsionMethod::Closed;
    else if (method_name == "direct")
        method = tf::TorsionMethod::Direct;
    else if (method_name != "both")
        throw tf::InvalidInputError("--method must be closed, direct or both");

    tf::BlockTorsionReport rep;
    if (kind == "pants") {
        rep = tf::pants_torsion(tf::io::parse_pants(doc), method);
    } else if (kind == "dblock") {
        rep = tf::dblock_torsion(tf::io::parse_block(doc), method);
    } else {
        throw tf::InvalidInputError("--kind must be pants or dblock");
    }

    json out = json::object();
    out["command"] = "block";
    out["kind"] = kind;
    out["method"] = method_name;
    out["tolerance"] = tol;
    std::ostringstream text;
    text << "block torsion (" << kind << ", method " << method_name << ")\n";
    if (method != tf::TorsionMethod::Direct) {
        out["closed_form"] = tf::io::torsion_to_json(rep.closed_form);
        text << "  closed form: " << complex_str(rep.closed_form.value) << "  (mod +-1)\n";
    }
    if (method != tf::TorsionMethod::Closed) {
        out["direct"] = tf::io::torsion_to_json(rep.direct);
        text << "  direct:      " << complex_str(rep.direct.value) << "  (mod +-1)\n";
    }
    if (kind == "dblock") {
        out["s_invariant"] = tf::io::complex_to_json(rep.s_invariant);
        text << "  S invariant: " << complex_str(rep.s_invariant) << "\n";
    }
    bool ok = true;
    if (method == tf::TorsionMethod::Both) {
        out["residual"] = rep.residual;
        ok = rep.residual <= tol;
        out["pass"] = ok;
        text << "  residual:    " << rep.residual << (ok ? "  PASS" : "  FAIL") << "\n";
    }
    print_report(opt, out, text.str());
    return ok ? kExitOk : kExitVerification;
}

int cmd_assemble(const Options& opt, const std::string& file, const std::string& method_name,
                 const std::string& curves_spec, bool surgery, const std::string& fill_spec) {
    const double tol = resolve_tol(opt, 1e-8);
    tf::io::AssembleInput input = tf::io::parse_assemble(tf::io::load_file(file));

    tf::AssemblyMethod method = tf::AssemblyMethod::Both;
    if (method_name == "closed")
        method = tf::AssemblyMethod::Closed;
    else if (method_name == "mv")
        method = tf::AssemblyMethod::Mv;
    else if (method_name != "both")
        throw tf::InvalidInputError("--method must be closed, mv or both");

    json out = json::object();
    out["command"] = "assemble";
    std::ostringstream text;

    const int n = static_cast<int>(input.graph.tori.size());
    if (!fill_spec.empty()) {
        const tf::CurveSystem fill_curves = tf::io::parse_curves(fill_spec, n);
        const tf::FillingResult res = tf::solve_filling(input.graph, fill_curves, input.character);
        input.character = res.chi;
        bool complex_character = false;
        for (const tf::Complex& p : res.chi.params)
            if (std::abs(p.imag()) > 1e-12) complex_character = true;
        if (complex_character && method != tf::AssemblyMethod::Closed) {
            method = tf::AssemblyMethod::Closed;
            out["note"] = "solved character is complex; closed-form evaluation only";
            text << "note: solved character is complex; closed-form evaluation only\n";
        }
        json fill = json::object();
        fill["iterations"] = res.iterations;
        fill["residual_inf"] = res.residual_inf;
        json params = json::array();
        for (const tf::Complex& p : res.chi.params) params.push_back(tf::io::complex_to_json(p));
        fill["character"] = params;
        out["filling"] = fill;
        text << "filled character solved in " << res.iterations
             << " iterations, |F|_inf = " << res.residual_inf << "\n";
    }

    tf::AssemblyReport rep;
    try {
        rep = tf::assemble_torsion(input.graph, input.character, method);
    } catch (const tf::InvalidShapeError&) {
        if (fill_spec.empty() || method == tf::AssemblyMethod::Closed) throw;
        // the solved character lies outside the geometric domain of the
        // direct pipeline; fall back to the formal closed form
        method = tf::AssemblyMethod::Closed;
        out["note"] = "solved character is outside the geometric domain; closed-form "
                      "evaluation only";
        text << "note: solved character is outside the geometric domain; closed-form "
                "evaluation only\n";
        rep = tf::assemble_torsion(input.graph, input.character, method);
    }
    out["n"] = rep.n;
    out["p"] = rep.p;
    out["c"] = rep.c;
    out["d"] = rep.d;
    out["tolerance"] = tol;
    text << "assembled torsion (n=" << rep.n << ", p=" << rep.p << ", c=" << rep.c
         << ", d=" << rep.d << ")\n";
    bool ok = true;
    if (method != tf::AssemblyMethod::Mv) {
        out["closed_form"] = tf::io::torsion_to_json(rep.closed_form);
        if (std::abs(rep.closed_form.value) < 1e-12) {
            out["warning"] = "closed form vanishes; the character is not generic";
            text << "  warning: closed form vanishes; the character is not generic\n";
        }
        json dets = json::array();
        for (const tf::Complex& det : rep.block_gram_dets)
            dets.push_back(tf::io::complex_to_json(det));
        out["block_gram_dets"] = dets;
        text << "  closed form 2^{3d} prod sqrt(det G): " << complex_str(rep.closed_form.value)
             << "  (mod +-1)\n";
    }
    if (method != tf::AssemblyMethod::Closed) {
        out["mv_value"] = tf::io::torsion_to_json(rep.mv_value);
        out["tor_h"] = tf::io::torsion_to_json(rep.tor_h);
        text << "  Mayer-Vietoris product:              " << complex_str(rep.mv_value.value)
             << "  (mod +-1)\n";
        text << "  Tor(H): " << complex_str(rep.tor_h.value) << "  (mod +-1)\n";
    }
    if (method == tf::AssemblyMethod::Both) {
        out["residual"] = rep.residual;
        ok = rep.residual <= tol;
        out["pass"] = ok;
        text << "  residual: " << rep.residual << (ok ? "  PASS" : "  FAIL") << "\n";
    }

    if (!curves_spec.empty()) {
        const tf::CurveSystem curves = tf::io::parse_curves(curves_spec, n);
        const tf::ChangeOfCurvesReport coc = tf::change_of_curves(
            input.graph, input.character, curves,
            method == tf::AssemblyMethod::Mv ? tf::AssemblyMethod::Mv : tf::AssemblyMethod::Closed);
        json cj = json::object();
        cj["jacobian_det"] = tf::io::complex_to_json(coc.jacobian_det);
        cj["value"] = tf::io::torsion_to_json(coc.value);
        cj["fd_relative_error"] = coc.fd_relative_error;
        out["change_of_curves"] = cj;
        text << "  change of curves: det J = " << complex_str(coc.jacobian_det)
             << ", T_(M,mu) = " << complex_str(coc.value.value) << "  (mod +-1)\n";

        if (surgery) {
            // the native system plays the core-curve role in the report
            std::vector<tf::Complex> u_gamma;
            for (int t = 0; t < n; ++t)
                u_gamma.push_back(input.graph.kind == tf::ManifoldKind::Fsl
                                      ? input.character.meridian_holonomy(t)
                                      : input.character.longitude_native(t));
            const tf::TorsionValue filled = tf::surgery_apply(coc.value, u_gamma);
            json sj = json::object();
            sj["value"] = tf::io::torsion_to_json(filled);
            out["surgery"] = sj;
            text << "  surgery formula: Tor(M_mu) = " << complex_str(filled.value)
                 << "  (mod +-1)\n";
        }
    }

    print_report(opt, out, text.str());
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const Options& opt, const std::string& suite, int samples) {
    const tf::VerifyReport rep = tf::run_verification(suite, samples, opt.seed);
    json out = json::object();
    out["command"] = "verify";
    out["suite"] = suite;
    out["samples"] = samples;
    out["seed"] = rep.seed;
    std::ostringstream text;
    text << "verification suite '" << suite << "', samples = " << samples
         << ", seed = " << rep.seed << "\n";
    if (samples == 0) text << "  warning: 0 samples requested, vacuous pass\n";
    json rows = json::array();
    bool all_ok = true;
    for (const tf::SweepResult& r : rep.results) {
        json row = json::object();
        row["name"] = r.name;
        row["samples"] = r.samples;
        row["max_residual"] = r.max_residual;
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        if (!r.pass) {
            json seeds = json::array();
            for (std::uint64_t s : r.failing_seeds) seeds.push_back(s);
            row["failing_seeds"] = seeds;
            all_ok = false;
        }
        rows.push_back(row);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "  %-32s n=%-5d max residual %.3e  tol %.1e  %s\n",
                      r.name.c_str(), r.samples, r.max_residual, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        text << buf;
        if (!r.pass) {
            text << "    failing seeds:";
            for (std::uint64_t s : r.failing_seeds) text << " " << s;
            text << "\n";
        }
    }
    out["results"] = rows;
    out["pass"] = all_ok;
    text << (all_ok ? "all suites PASS\n" : "FAILURES present\n");
    print_report(opt, out, text.str());
    return all_ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsion-forge: twisted Reidemeister torsion of fundamental shadow link "
                 "complements and doubles of hyperbolic polyhedral 3-manifolds"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--tol", opt.tol, "Tolerance override (wins over TORSION_FORGE_TOL)");
    app.add_option("--seed", opt.seed, "Random seed for sweeps");

    std::string file, block_kind = "dblock", method = "both", curves, fill, suite = "all";
    int samples = 200;
    bool surgery = false;

    CLI::App* gram = app.add_subcommand("gram", "Gram matrix, determinant, cofactors, conversions");
    gram->fallthrough();
    gram->add_option("file", file, "Input JSON file")->required();

    CLI::App* block = app.add_subcommand("block", "Torsion of a pair of pants or a (dual) D-block");
    block->fallthrough();
    block->add_option("file", file, "Input JSON file")->required();
    block->add_option("--kind", block_kind, "pants or dblock")
        ->check(CLI::IsMember({"pants", "dblock"}));
    block->add_option("--method", method, "closed, direct or both")
        ->check(CLI::IsMember({"closed", "direct", "both"}));

    CLI::App* assemble = app.add_subcommand("assemble", "Assembled manifold torsion");
    assemble->fallthrough();
    assemble->add_option("file", file, "Gluing-graph JSON file")->required();
    assemble->add_option("--method", method, "closed, mv or both")
        ->check(CLI::IsMember({"closed", "mv", "both"}));
    assemble->add_option("--curves", curves, "Change-of-curves spec \"p,q;p,q;...\"");
    assemble->add_flag("--surgery", surgery, "Apply the surgery formula to the curve system");
    assemble->add_option("--fill", fill, "Solve the filling equations for this curve system");

    CLI::App* verify = app.add_subcommand("verify", "Seeded verification sweeps");
    verify->fallthrough();
    verify->add_option("--suite", suite, "identities, torsion, mv, multiplicativity or all")
        ->check(CLI::IsMember({"identities", "torsion", "mv", "multiplicativity", "all"}));
    verify->add_option("--samples", samples, "Samples per sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (gram->parsed()) return cmd_gram(opt, file);
        if (block->parsed()) return cmd_block(opt, file, block_kind, method);
        if (assemble->parsed()) return cmd_assemble(opt, file, method, curves, surgery, fill);
        if (verify->parsed()) return cmd_verify(opt, suite, samples);
    } catch (const tf::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const tf::VerificationError& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const tf::InvalidInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
