// Command-line front end: problem files in, verdict documents out, plus
// scripting access to the underlying operations.  Exit codes: 0 YES or
// success, 1 NO, 2 NO_UP_TO_BUDGET, 3 input error, 4 internal inconsistency.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algint/document.hpp"
#include "algint/mordell_weil.hpp"
#include "algint/numeric.hpp"

namespace ai = algint;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ai::DegenerateInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_for(ai::Answer a) {
    switch (a) {
    case ai::Answer::Yes: return 0;
    case ai::Answer::No: return 1;
    case ai::Answer::NoUpToBudget: return 2;
    }
    return 4;
}

long env_digits(long fallback) {
    const char* env = std::getenv("ALGINT_DIGITS");
    if (!env) return fallback;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    return (end && *end == '\0' && v >= 10 && v <= 100000) ? v : fallback;
}

int cmd_decide(const std::string& file, bool json) {
    ai::FieldTower tower;
    ai::ProblemFile pf = ai::parse_problem_file(slurp(file), tower);
    if (!pf.has_query) throw ai::DegenerateInput("the problem file has no [query] section");
    if (!pf.digits_given) pf.problem.budgets.digits = env_digits(pf.problem.budgets.digits);
    ai::Verdict v = ai::decide(pf.problem, tower);
    std::cout << (json ? ai::render_verdict_json(v, pf) : ai::render_verdict(v, pf));
    return exit_for(v.answer);
}

int cmd_verify(const std::string& file, const std::string& certfile) {
    ai::FieldTower tower;
    ai::ProblemFile pf = ai::parse_problem_file(slurp(file), tower);
    if (!pf.has_query) throw ai::DegenerateInput("the problem file has no [query] section");
    ai::ParsedDocument doc = ai::parse_verdict_document(slurp(certfile), pf, tower);
    if (!doc.hash_matches) {
        std::cerr << "document hash mismatch\n";
        return 4;
    }
    if (doc.answer != ai::Answer::Yes) {
        std::cout << "hash verified; a " << ai::to_string(doc.answer)
                  << " document carries no certificate to replay\n";
        return 0;
    }
    if (!ai::replay(pf.problem, *doc.certificate)) {
        std::cerr << "certificate does not replay to the zero differential\n";
        return 4;
    }
    std::cout << "hash verified; certificate replays to the zero differential\n";
    return 0;
}

int cmd_exact(const std::string& expr) {
    ai::FieldTower tower;
    ai::Differential w = ai::parse_inline_form(expr, tower);
    ai::Exactness e = ai::exactness(w, tower);
    if (e.exact) {
        std::cout << "exact: primitive " << e.primitive.str() << "\n";
        return 0;
    }
    if (e.residue_obstruction)
        std::cout << "not exact: residue " << e.witness_residue.str() << " at "
                  << e.witness_place.str() << "\n";
    else
        std::cout << "not exact: the class survives after all residues vanish\n";
    return 1;
}

int cmd_residues(const std::string& expr) {
    ai::FieldTower tower;
    ai::Differential w = ai::parse_inline_form(expr, tower);
    auto rs = ai::residues(w, tower);
    for (const auto& r : rs) std::cout << r.place.str() << ": " << r.value.str() << "\n";
    if (rs.empty()) std::cout << "no poles\n";
    return 0;
}

int cmd_trace(const std::string& file, const std::string& zname, const std::string& wname) {
    ai::FieldTower tower;
    ai::ProblemFile pf = ai::parse_problem_file(slurp(file), tower);
    const ai::Correspondence* z = pf.correspondence(zname);
    if (!z) throw ai::DegenerateInput("unknown correspondence '" + zname + "'");
    const ai::Differential* w = pf.form(wname);
    if (!w) throw ai::DegenerateInput("unknown form '" + wname + "'");
    ai::Correspondence zz = *z;
    if (zz.left != w->curve() && zz.right == w->curve()) zz = zz.transposed();
    ai::Differential t = ai::trace_image(zz, *w);
    std::cout << t.str() << "  on " << zz.right->label() << "\n";
    return 0;
}

int cmd_periods(const std::string& expr, long digits, int paths) {
    ai::FieldTower tower;
    ai::Differential w = ai::parse_inline_form(expr, tower);
    ai::Embedding emb(tower.top(), digits);
    auto avoid = ai::singular_x_values(w, emb);
    int done = 0;
    for (unsigned long seed = 1; seed <= 40 && done < paths; ++seed) {
        try {
            ai::NumericPath path = ai::random_path(w.curve(), emb, seed, avoid, digits);
            ai::BigComplex val = ai::integrate_form(w, path, emb, digits);
            std::cout << "path " << seed << ": " << val.str(static_cast<size_t>(digits)) << "\n";
            ++done;
        } catch (const ai::Error&) {
            continue;
        }
    }
    if (done < paths) {
        std::cerr << "only " << done << " of " << paths << " paths were usable\n";
        return done == 0 ? 2 : 0;
    }
    return 0;
}

int cmd_mw(const std::string& eq, const std::vector<std::string>& points) {
    ai::CurvePtr c = ai::parse_inline_curve(eq);
    const ai::APoly& r = c->rhs();
    if (c->is_line() || r.degree() != 3 || !(r[3] == ai::AlgebraicNumber(1)) ||
        !r[2].is_zero() || !r[1].is_rational() || !r[0].is_rational())
        throw ai::UnsupportedCurveClass(
            "the group computations expect y^2 = x^3 + a x + b over the rationals");
    ai::EllipticQ e(r[1].to_rational(), r[0].to_rational());

    auto [m, n] = e.torsion_structure();
    if (m == 1 && n == 1) std::cout << "torsion: trivial\n";
    else if (m == 1) std::cout << "torsion: Z/" << n << "\n";
    else std::cout << "torsion: Z/" << m << " x Z/" << n << "\n";
    for (const ai::ECPoint& p : e.torsion_points()) {
        if (p.infinite) continue;
        std::cout << "  (" << ai::to_string(p.x) << ", " << ai::to_string(p.y) << ")\n";
    }

    if (points.empty()) return 0;
    std::vector<ai::ECPoint> pts;
    for (const std::string& s : points) {
        size_t comma = s.find(',');
        if (comma == std::string::npos)
            throw ai::DegenerateInput("points are written x,y: '" + s + "'");
        ai::Rational px, py;
        try {
            px = ai::Rational(s.substr(0, comma));
            py = ai::Rational(s.substr(comma + 1));
            px.canonicalize();
            py.canonicalize();
        } catch (...) {
            throw ai::DegenerateInput("points are written x,y: '" + s + "'");
        }
        ai::ECPoint p = ai::ECPoint::affine(px, py);
        if (!e.contains(p)) throw ai::DegenerateInput("the point " + s + " is not on the curve");
        pts.push_back(p);
    }
    ai::MwKernel k = ai::mw_kernel(e, pts);
    std::cout << "kernel rank " << k.basis.size() << " ("
              << (k.complete ? "complete" : "incomplete") << ")\n";
    for (const auto& row : k.basis) {
        std::cout << " ";
        for (const ai::Integer& v : row) std::cout << " " << v.get_str();
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrability decision engine for differentials on curves"};
    app.require_subcommand(1);

    std::string file, certfile, expr, zname, wname;
    bool json = false;
    long digits = env_digits(50);
    int paths = 3;
    std::vector<std::string> points;

    CLI::App* d = app.add_subcommand("decide", "decide a problem file, write a verdict document");
    d->add_option("file", file, "problem file, or - for stdin")->required();
    d->add_flag("--json", json, "write the JSON encoding instead of the canonical text");

    CLI::App* vf = app.add_subcommand("verify", "replay a verdict document against its problem");
    vf->add_option("file", file, "problem file")->required();
    vf->add_option("certificate", certfile, "verdict document from decide")->required();

    CLI::App* ex = app.add_subcommand("exact", "decide exactness of 'EXPR on CURVE'");
    ex->add_option("form", expr, "for example \"2*x dx on line\"")->required();

    CLI::App* rs = app.add_subcommand("residues", "residues of 'EXPR on CURVE' at its poles");
    rs->add_option("form", expr, "for example \"1/y dx on y^2 = x^3 - x\"")->required();

    CLI::App* tr = app.add_subcommand("trace", "trace a declared form along a correspondence");
    tr->add_option("file", file, "problem file")->required();
    tr->add_option("correspondence", zname, "correspondence name")->required();
    tr->add_option("form", wname, "form name")->required();

    CLI::App* pe = app.add_subcommand("periods", "numeric path integrals of 'EXPR on CURVE'");
    pe->add_option("form", expr, "form expression")->required();
    pe->add_option("--digits", digits, "working precision");
    pe->add_option("--paths", paths, "number of paths");

    CLI::App* mw = app.add_subcommand("mw", "torsion and relation lattice on y^2 = x^3 + a x + b");
    mw->add_option("curve", expr, "curve equation")->required();
    mw->add_option("--point", points, "rational point x,y (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand(d)) return cmd_decide(file, json);
        if (app.got_subcommand(vf)) return cmd_verify(file, certfile);
        if (app.got_subcommand(ex)) return cmd_exact(expr);
        if (app.got_subcommand(rs)) return cmd_residues(expr);
        if (app.got_subcommand(tr)) return cmd_trace(file, zname, wname);
        if (app.got_subcommand(pe)) return cmd_periods(expr, digits, paths);
        if (app.got_subcommand(mw)) return cmd_mw(expr, points);
    } catch (const ai::ParseError& e) {
        std::cerr << (file.empty() || file == "-" ? "input" : file) << ": " << e.what() << "\n";
        return 3;
    } catch (const ai::InternalInconsistency& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const ai::BudgetExhausted& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ai::PrecisionTooLow& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ai::PrecisionExhausted& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ai::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
