#include "algint/decision.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algint/errors.hpp"
#include "algint/numeric.hpp"
#include "algint/zlattice.hpp"

namespace algint {

std::string to_string(Mode m) {
    switch (m) {
    case Mode::GeneralSet: return "general";
    case Mode::EllipticSet: return "elliptic";
    case Mode::LogSet: return "log";
    }
    return "general";
}

std::string to_string(Answer a) {
    switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::NoUpToBudget: return "NO_UP_TO_BUDGET";
    }
    return "NO_UP_TO_BUDGET";
}

namespace {

// One span generator.  Trace generators come from the user's
// correspondences, synthesized ones from the elliptic quotient search, log
// atoms from the divisor-class computation on the residue support.
struct Gen {
    enum class Kind { Trace, Synth, Log };
    Kind kind = Kind::Trace;
    Differential w;    // the generator, as a form on the target curve
    size_t corr = 0;   // Trace: index into Problem::correspondences
    Correspondence z;  // Synth: transposed graph realizing the pullback
    Differential form; // Synth: the form upstairs that w is traced from
    FnElem f;          // Log: w = (1/n) dlog f
    Integer n = 1;
};

bool has_nonzero(const std::vector<PlaceValue>& rv) {
    for (const auto& e : rv)
        if (!e.value.is_zero()) return true;
    return false;
}

int small_int(const Integer& z) {
    if (!z.fits_sint_p())
        throw BudgetExhausted("divisor coefficient exceeds machine range");
    return static_cast<int>(z.get_si());
}

Divisor int_divisor(const std::vector<Place>& s, const std::vector<Integer>& row) {
    Divisor d;
    for (size_t i = 0; i < s.size(); ++i) {
        int m = small_int(row[i]);
        if (m != 0) d.add(s[i], m);
    }
    return d;
}

// Rows spanning { m : sum m_i = 0 }.
ZMat deg0_lattice(size_t n) {
    ZMat rows;
    for (size_t i = 0; i + 1 < n; ++i) {
        std::vector<Integer> r(n, Integer(0));
        r[i] = 1;
        r[i + 1] = -1;
        rows.push_back(std::move(r));
    }
    return rows;
}

// Value of f at p when f has no pole there.
std::optional<AlgebraicNumber> finite_value(const FnElem& f, const Place& p) {
    if (f.is_zero()) return AlgebraicNumber(0);
    long v = f.order_at(p);
    if (v < 0) return std::nullopt;
    if (v > 0) return AlgebraicNumber(0);
    return f.expand_at(p, 1).coeff(0);
}

struct PointAt {
    bool finite = false;
    AlgebraicNumber u, v;
};

PointAt image_point(const Morphism& phi, const Place& p) {
    PointAt r;
    auto u = finite_value(phi.x_image, p);
    if (!u) return r;
    auto v = finite_value(phi.y_image, p);
    if (!v) return r;
    r.finite = true;
    r.u = *u;
    r.v = *v;
    return r;
}

Gen log_atom(const FnElem& f, int n) {
    Gen g;
    g.kind = Gen::Kind::Log;
    g.w = AlgebraicNumber(Rational(1) / Rational(n)) * Differential::dlog(f);
    g.f = f;
    g.n = n;
    return g;
}

// Section of L(-k d) for the smallest k <= kmax, if any.  Degree zero makes
// div(f) = k d exact, so f witnesses principality of k d.
struct PrincipalHit {
    int k = 0;
    FnElem f;
};

std::optional<PrincipalHit> principal_multiple(const CurvePtr& c, const Divisor& d, int kmax,
                                               FieldTower& tower) {
    for (int k = 1; k <= kmax; ++k) {
        auto basis = riemann_roch_basis(c, -(k * d), tower);
        if (basis.empty()) continue;
        if (basis.size() != 1)
            throw InternalInconsistency("degree zero divisor with excess sections");
        return PrincipalHit{k, basis[0]};
    }
    return std::nullopt;
}

// The torsion sublattice of the degree zero divisors supported on s,
// together with a dlog atom per basis direction.  Complete when every
// missing relation is provably absent.
struct LogClosure {
    std::vector<Gen> atoms;
    bool complete = false;
    std::vector<Qualification> notes;
};

// Elliptic-over-Q route: push the support through the Weierstrass
// normalization and read the relation lattice off the Mordell-Weil sieve.
// Returns false when the route does not apply to this curve or support.
bool elliptic_lattice(const CurvePtr& c, const std::vector<Place>& s, const Budgets& budgets,
                      FieldTower& tower, LogClosure& out) {
    if (c->is_line() || c->genus() != 1) return false;
    Morphism phi;
    try {
        phi = normalize_to_weierstrass(c, c->label() + "#w", tower);
    } catch (const Error&) {
        return false;
    }
    const APoly& rhs = phi.target->rhs();
    if (rhs.degree() != 3 || !(rhs[3] == AlgebraicNumber(1)) || !rhs[2].is_zero()) return false;
    if (!rhs[1].is_rational() || !rhs[0].is_rational()) return false;

    std::vector<ECPoint> pts;
    for (const Place& p : s) {
        PointAt q = image_point(phi, p);
        if (!q.finite) {
            pts.push_back(ECPoint::infinity());
            continue;
        }
        if (!q.u.is_rational() || !q.v.is_rational()) return false;
        pts.push_back(ECPoint::affine(q.u.to_rational(), q.v.to_rational()));
    }

    EllipticQ e(rhs[1].to_rational(), rhs[0].to_rational());
    size_t n = s.size();
    std::vector<ECPoint> cols = pts;
    for (const ECPoint& t : e.torsion_points())
        if (!t.infinite) cols.push_back(t);
    MwKernel ker = mw_kernel(e, cols, budgets.mw);

    // A support divisor is torsion in the class group exactly when its
    // point sum lands in the torsion subgroup, i.e. when it extends to a
    // relation against the torsion columns.
    ZMat proj;
    for (const auto& row : ker.basis)
        proj.push_back(std::vector<Integer>(row.begin(), row.begin() + n));
    ZMat lam;
    if (!proj.empty()) lam = hnf(lattice_intersect(hnf(proj), deg0_lattice(n), n));

    for (const auto& row : lam) {
        Divisor d = int_divisor(s, row);
        ECPoint acc = ECPoint::infinity();
        for (size_t i = 0; i < n; ++i) acc = e.add(acc, e.mul(row[i], pts[i]));
        auto ord = e.torsion_order(acc);
        if (!ord)
            throw InternalInconsistency("relation direction escaped the torsion subgroup");
        auto basis = riemann_roch_basis(c, -(*ord * d), tower);
        if (basis.size() != 1)
            throw InternalInconsistency("torsion multiple lost its section");
        out.atoms.push_back(log_atom(basis[0], *ord));
    }
    out.complete = ker.complete;
    if (!ker.complete)
        out.notes.push_back({"divisor-classes",
                             "the Mordell-Weil sieve did not certify the relation lattice on the "
                             "residue support"});
    return true;
}

LogClosure log_closure(const CurvePtr& c, const std::vector<Place>& s, const Budgets& budgets,
                       FieldTower& tower) {
    LogClosure out;
    if (s.size() < 2) {
        // no nonzero degree zero divisor fits on fewer than two places
        out.complete = true;
        return out;
    }
    if (elliptic_lattice(c, s, budgets, tower, out)) return out;

    ZMat h = hnf(deg0_lattice(s.size()));
    bool all = true;
    for (const auto& row : h) {
        Divisor d = int_divisor(s, row);
        auto hit = principal_multiple(c, d, budgets.torsion_k_max, tower);
        if (hit)
            out.atoms.push_back(log_atom(hit->f, hit->k));
        else
            all = false;
    }
    out.complete = all;
    if (!all)
        out.notes.push_back(
            {"divisor-classes", "a residue divisor class resisted the principality search up to "
                                "k = " + std::to_string(budgets.torsion_k_max)});
    return out;
}

void validate_problem(const Problem& p) {
    if (!p.target.curve()) throw DegenerateInput("target form carries no curve");
    for (const auto& w : p.allowed)
        if (!w.curve()) throw DegenerateInput("allowed form carries no curve");
    for (const auto& tc : p.correspondences) {
        if (tc.allowed >= p.allowed.size())
            throw DegenerateInput("correspondence " + tc.z.label + " points outside the allowed set");
        if (!tc.z.left || !tc.z.right)
            throw DegenerateInput("correspondence " + tc.z.label + " is missing a factor");
        if (tc.z.left->label() != p.allowed[tc.allowed].curve()->label())
            throw DegenerateInput("correspondence " + tc.z.label +
                                  " does not start on the curve of its allowed form");
        if (tc.z.right->label() != p.target.curve()->label())
            throw DegenerateInput("correspondence " + tc.z.label +
                                  " does not end on the target curve");
        validate_correspondence(tc.z);
    }
    if (p.budgets.torsion_k_max < 1 || p.budgets.quotient_degree_bound < 2 ||
        p.budgets.digits < 10 || p.budgets.oracle_paths < 1)
        throw DegenerateInput("budget below its working minimum");
}

struct SpanCore {
    std::vector<AlgebraicNumber> coeffs;
    FnElem gamma;
    size_t prim_dim = 0;
};

// Solve w0 = sum c_i L_i + d gamma with d gamma's poles confined in m.  If
// d gamma has a pole of order k at p then gamma has one of order k - 1, so
// gamma ranges over L(m reduced by one at every place).
std::optional<SpanCore> span_core(const Differential& w0, const std::vector<Differential>& L,
                                  const Divisor& m, FieldTower& tower) {
    const CurvePtr& c = w0.curve();
    Divisor bound;
    for (const auto& ent : m.entries())
        if (ent.second > 1) bound.add(ent.first, ent.second - 1);
    std::vector<FnElem> prim = riemann_roch_basis(c, bound, tower);

    std::vector<FnElem> cols;
    cols.reserve(L.size() + prim.size());
    for (const auto& w : L) cols.push_back(w.fn());
    for (const auto& g : prim) cols.push_back(g.derivative());

    auto sol = fn_linear_solve(w0.fn(), cols);
    if (!sol) return std::nullopt;

    SpanCore r;
    r.coeffs.assign(sol->begin(), sol->begin() + static_cast<long>(L.size()));
    r.gamma = FnElem::zero(c);
    for (size_t i = 0; i < prim.size(); ++i)
        r.gamma += FnElem((*sol)[L.size() + i]) * prim[i];
    r.prim_dim = prim.size();
    return r;
}

Verdict engine(const Problem& p, FieldTower& tower, bool logs, bool elliptic) {
    validate_problem(p);
    const CurvePtr& x0 = p.target.curve();

    Verdict v;
    v.qualifications.push_back({"mode", to_string(p.mode) + " allowed set"});

    std::vector<Gen> gens;
    for (size_t i = 0; i < p.correspondences.size(); ++i) {
        Gen g;
        g.kind = Gen::Kind::Trace;
        g.corr = i;
        g.w = trace_image(p.correspondences[i].z, p.allowed[p.correspondences[i].allowed]);
        gens.push_back(std::move(g));
    }

    // The quotient search runs against the base tower, before residue and
    // pole computations enlarge it; extension-field involutions would
    // otherwise enter the generator list and the certificate.
    QuotientSearch qs;
    bool quotients_complete = true;
    if (elliptic) {
        qs = find_elliptic_quotients(x0, tower);
        quotients_complete = qs.complete;
        v.qualifications.push_back(
            {"quotients", std::to_string(qs.maps.size()) + " elliptic quotient(s); search " +
                              (qs.complete ? "exhaustive" : "limited to involution quotients")});
    }

    auto target_res = residues(p.target, tower);

    if (!logs && !elliptic) {
        for (size_t i = 0; i < p.allowed.size(); ++i) {
            auto rv = residues(p.allowed[i], tower);
            for (const auto& e : rv)
                if (!e.value.is_zero())
                    throw DegenerateInput("allowed form " + std::to_string(i + 1) +
                                          " carries a residue at " + e.place.str() +
                                          "; use the residue-aware decision");
        }
        // Trace images of residue-free forms are residue-free, and so are
        // exact differentials; a target residue refutes outright.
        for (const auto& e : target_res)
            if (!e.value.is_zero()) {
                v.answer = Answer::No;
                v.refutation = "the target has residue " + e.value.str() + " at " +
                               e.place.str() +
                               ", but every generator available to a residue-free allowed set "
                               "is residue-free";
                v.qualifications.push_back(
                    {"complete", "residue preservation holds for every correspondence, listed "
                                 "or not"});
                return v;
            }
    }

    if (elliptic) {
        for (size_t k = 0; k < qs.maps.size(); ++k) {
            const Morphism& phi = qs.maps[k];
            Correspondence zq = graph_of(phi, "quot" + std::to_string(k + 1)).transposed();
            const CurvePtr& e = qs.maps[k].target;
            FnElem u = FnElem::x_of(e), w = FnElem::y_of(e);

            std::vector<Differential> basics = {Differential(w.inverse()), Differential(u / w)};
            for (const auto& we : basics) {
                Gen g;
                g.kind = Gen::Kind::Synth;
                g.z = zq;
                g.form = we;
                g.w = pullback(phi, we);
                gens.push_back(std::move(g));
            }
            // third-kind forms at the images of the target's residue places
            std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> seen;
            for (const auto& er : target_res) {
                if (er.value.is_zero()) continue;
                PointAt q = image_point(phi, er.place);
                if (!q.finite) continue;
                if (std::find(seen.begin(), seen.end(), std::make_pair(q.u, q.v)) != seen.end())
                    continue;
                seen.emplace_back(q.u, q.v);
                FnElem num = w + FnElem::constant(e, q.v);
                FnElem den = FnElem(AlgebraicNumber(2)) * w * (u - FnElem::constant(e, q.u));
                Gen g;
                g.kind = Gen::Kind::Synth;
                g.z = zq;
                g.form = Differential(num / den);
                g.w = pullback(phi, g.form);
                gens.push_back(std::move(g));
            }
        }
    }

    bool log_complete = true;
    if (logs) {
        std::set<Place> sset;
        for (const auto& e : target_res)
            if (!e.value.is_zero()) sset.insert(e.place);
        for (const auto& g : gens)
            if (!g.w.is_zero())
                for (const auto& e : residues(g.w, tower))
                    if (!e.value.is_zero()) sset.insert(e.place);
        std::vector<Place> s(sset.begin(), sset.end());

        LogClosure closure = log_closure(x0, s, p.budgets, tower);
        log_complete = closure.complete;
        for (auto& q : closure.notes) v.qualifications.push_back(std::move(q));
        for (auto& a : closure.atoms) gens.push_back(std::move(a));

        if (p.mode != Mode::LogSet)
            for (size_t i = 0; i < p.allowed.size(); ++i)
                if (has_nonzero(residues(p.allowed[i], tower))) {
                    v.qualifications.push_back(
                        {"log-terms", "d log terms granted by allowed form " +
                                          std::to_string(i + 1) + ", which carries a residue"});
                    break;
                }
    }

    Divisor m = pole_divisor(p.target, tower);
    for (const auto& g : gens)
        if (!g.w.is_zero()) m = Divisor::sup(m, pole_divisor(g.w, tower));

    std::vector<Differential> cols;
    cols.reserve(gens.size());
    for (const auto& g : gens) cols.push_back(g.w);
    auto core = span_core(p.target, cols, m, tower);

    size_t n_trace = 0, n_synth = 0, n_log = 0;
    for (const auto& g : gens) {
        if (g.kind == Gen::Kind::Trace) ++n_trace;
        else if (g.kind == Gen::Kind::Synth) ++n_synth;
        else ++n_log;
    }

    if (core) {
        Certificate cert;
        cert.trace.push_back("generators: " + std::to_string(n_trace) + " traced, " +
                             std::to_string(n_synth) + " synthesized, " + std::to_string(n_log) +
                             " logarithmic");
        cert.trace.push_back("pole bound: " + (m.empty() ? std::string("0") : m.str()));
        cert.trace.push_back("primitive space dimension: " + std::to_string(core->prim_dim));
        for (size_t i = 0; i < gens.size(); ++i) {
            const AlgebraicNumber& c = core->coeffs[i];
            if (c.is_zero()) continue;
            const Gen& g = gens[i];
            switch (g.kind) {
            case Gen::Kind::Trace: {
                const TaggedCorrespondence& tc = p.correspondences[g.corr];
                cert.terms.push_back({c, tc.z, tc.allowed, p.allowed[tc.allowed]});
                cert.trace.push_back("term: " + c.str() + " * trace(" + tc.z.label + ", w" +
                                     std::to_string(tc.allowed + 1) + ")");
                break;
            }
            case Gen::Kind::Synth:
                cert.terms.push_back({c, g.z, std::nullopt, g.form});
                cert.trace.push_back("term: " + c.str() + " * trace(" + g.z.label + ", " +
                                     g.form.str() + ")");
                break;
            case Gen::Kind::Log: {
                AlgebraicNumber e = c / AlgebraicNumber(Rational(g.n));
                FnElem f = g.f;
                if (e.is_rational() && e.to_rational() < 0) {
                    e = AlgebraicNumber(-1) * e;
                    f = f.inverse();
                }
                cert.logs.push_back({e, f});
                cert.trace.push_back("term: " + e.str() + " * dlog(" + f.str() + ")");
                break;
            }
            }
        }
        cert.gamma = core->gamma;
        cert.trace.push_back(cert.gamma.is_zero() ? "gamma: 0" : "gamma: " + cert.gamma.str());
        v.answer = Answer::Yes;
        v.certificate = std::move(cert);
        return v;
    }

    bool corr_complete = p.correspondences_complete || p.allowed.empty();
    bool ell_complete = !elliptic || quotients_complete || p.correspondences_complete;
    bool complete = corr_complete && log_complete && ell_complete;
    v.answer = complete ? Answer::No : Answer::NoUpToBudget;
    v.refutation = "no constant combination of the " + std::to_string(gens.size()) +
                   " generators and exact differentials matches the target inside the bounded "
                   "form space";
    if (complete) {
        std::string why = p.allowed.empty() ? "the allowed set is empty"
                          : p.correspondences_complete
                              ? "the correspondence list is asserted complete"
                              : "";
        if (logs) why += "; the d log closure over the residue support is certified";
        if (elliptic && quotients_complete) why += "; the elliptic quotient search is exhaustive";
        if (!why.empty() && why[0] == ';') why = why.substr(2);
        v.qualifications.push_back({"complete", why});
    } else if (!corr_complete) {
        v.qualifications.push_back(
            {"correspondences", "the listed correspondences are not asserted to exhaust the "
                                "allowed set"});
    }
    return v;
}

BigFloat tol_pow10(long k, long prec) {
    Integer den(1);
    for (long i = 0; i < k; ++i) den *= 10;
    return BigFloat::from_rational(Rational(1) / Rational(den), prec);
}

std::string join_notes(const std::vector<std::string>& notes) {
    std::string all;
    for (const auto& n : notes) {
        if (!all.empty()) all += "; ";
        all += n;
    }
    return all;
}

} // namespace

std::optional<SpanSolution> span_decide(const Differential& w0, const std::vector<Differential>& L,
                                        const Divisor& m, FieldTower& tower) {
    if (!w0.curve()) throw DegenerateInput("span target carries no curve");
    auto core = span_core(w0, L, m, tower);
    if (!core) return std::nullopt;
    return SpanSolution{core->coeffs, core->gamma};
}

Verdict decide_residueless(const Problem& p, FieldTower& tower) {
    return engine(p, tower, false, false);
}

Verdict decide_with_residues(const Problem& p, FieldTower& tower) {
    bool logs = p.mode == Mode::LogSet;
    if (!logs)
        for (const auto& w : p.allowed)
            if (has_nonzero(residues(w, tower))) {
                logs = true;
                break;
            }
    return engine(p, tower, logs, false);
}

Verdict decide_elliptic(const Problem& p, FieldTower& tower) {
    if (!p.target.curve() || p.target.curve()->is_line())
        throw UnsupportedCurveClass("the elliptic-set decision expects a hyperelliptic target");
    return engine(p, tower, false, true);
}

Verdict decide(const Problem& p, FieldTower& tower) {
    Verdict v;
    switch (p.mode) {
    case Mode::EllipticSet:
        v = decide_elliptic(p, tower);
        break;
    case Mode::LogSet:
        v = decide_with_residues(p, tower);
        break;
    case Mode::GeneralSet: {
        bool gate = false;
        for (const auto& w : p.allowed)
            if (has_nonzero(residues(w, tower))) {
                gate = true;
                break;
            }
        v = gate ? decide_with_residues(p, tower) : decide_residueless(p, tower);
        break;
    }
    }

    if (v.answer == Answer::Yes && (!v.certificate || !replay(p, *v.certificate)))
        throw InternalInconsistency("certificate failed to replay against the target");

    OracleReport rep = cross_check(p, v, tower);
    if (!rep.consistent)
        throw InternalInconsistency("numeric cross-check contradicts the verdict: " +
                                    join_notes(rep.notes));
    std::string detail = join_notes(rep.notes);
    v.qualifications.push_back({"oracle", detail.empty() ? "no numeric findings" : detail});
    return v;
}

bool replay(const Problem& p, const Certificate& cert) {
    const CurvePtr& x0 = p.target.curve();
    if (!x0) return false;
    FnElem total = FnElem::zero(x0);
    for (const auto& t : cert.terms) {
        if (t.allowed) {
            if (*t.allowed >= p.allowed.size()) return false;
            if (!(t.form == p.allowed[*t.allowed])) return false;
        }
        total += FnElem(t.c) * trace_image(t.z, t.form).fn();
    }
    for (const auto& l : cert.logs) {
        if (l.f.is_zero()) return false;
        total += FnElem(l.e) * (l.f.derivative() / l.f);
    }
    total += cert.gamma.derivative();
    return (p.target.fn() - total).is_zero();
}

OracleReport cross_check(const Problem& p, const Verdict& v, FieldTower& tower) {
    OracleReport rep;
    const long digits = p.budgets.digits;
    const long exp10 = digits * 3 / 5;

    if (v.answer == Answer::NoUpToBudget) {
        rep.notes.push_back("oracle skipped: the verdict is bounded, not absolute");
        return rep;
    }

    Embedding emb(tower.top(), digits);
    const CurvePtr& x0 = p.target.curve();
    BigFloat tol = tol_pow10(exp10, emb.prec());

    if (v.answer == Answer::Yes) {
        const Certificate& cert = *v.certificate;
        std::vector<std::pair<AlgebraicNumber, Differential>> parts;
        for (const auto& t : cert.terms) parts.emplace_back(t.c, trace_image(t.z, t.form));
        for (const auto& l : cert.logs) parts.emplace_back(l.e, Differential::dlog(l.f));
        Differential dgamma = Differential::d_of(cert.gamma);

        std::vector<BigComplex> avoid = singular_x_values(p.target, emb);
        for (const auto& pr : parts) {
            auto sv = singular_x_values(pr.second, emb);
            avoid.insert(avoid.end(), sv.begin(), sv.end());
        }
        if (!cert.gamma.is_zero()) {
            auto sv = singular_x_values(dgamma, emb);
            avoid.insert(avoid.end(), sv.begin(), sv.end());
        }

        int good = 0;
        for (unsigned long seed = 1; seed <= 40 && good < p.budgets.oracle_paths; ++seed) {
            BigComplex total;
            try {
                NumericPath path = random_path(x0, emb, seed, avoid, digits);
                BigComplex y_end = BigComplex::zero(emb.prec());
                total = integrate_form(p.target, path, emb, digits, &y_end);
                for (const auto& pr : parts)
                    total -= emb(pr.first) * integrate_form(pr.second, path, emb, digits);
                if (!cert.gamma.is_zero()) {
                    BigComplex gs = eval_fn(cert.gamma, path.xs.front(), path.y0, emb);
                    BigComplex ge = eval_fn(cert.gamma, path.xs.back(), y_end, emb);
                    total -= ge - gs;
                }
            } catch (const Error&) {
                continue;
            }
            if (!total.is_finite() || abs(total) > tol) {
                rep.consistent = false;
                rep.notes.push_back("path seed " + std::to_string(seed) +
                                    ": certificate defect " + abs(total).str(6) +
                                    " exceeds 10^-" + std::to_string(exp10));
                return rep;
            }
            ++good;
        }
        rep.paths = good;
        rep.notes.push_back(good == 0
                                ? std::string("oracle skipped: no usable integration path")
                                : "certificate integral identity holds on " +
                                      std::to_string(good) + " path(s) below 10^-" +
                                      std::to_string(exp10));
        return rep;
    }

    // Complete refutation: a path-stable integer relation tying the target
    // to the trace images would contradict it.
    std::vector<Differential> parts;
    for (const auto& tc : p.correspondences)
        parts.push_back(trace_image(tc.z, p.allowed[tc.allowed]));
    std::vector<BigComplex> avoid = singular_x_values(p.target, emb);
    for (const auto& w : parts) {
        if (w.is_zero()) continue;
        auto sv = singular_x_values(w, emb);
        avoid.insert(avoid.end(), sv.begin(), sv.end());
    }

    std::vector<std::vector<BigComplex>> samples;
    for (unsigned long seed = 1; seed <= 40 && samples.size() < 2; ++seed) {
        try {
            NumericPath path = random_path(x0, emb, seed, avoid, digits);
            std::vector<BigComplex> vals;
            vals.push_back(integrate_form(p.target, path, emb, digits));
            for (const auto& w : parts) vals.push_back(integrate_form(w, path, emb, digits));
            samples.push_back(std::move(vals));
        } catch (const Error&) {
            continue;
        }
    }
    rep.paths = static_cast<int>(samples.size());
    if (samples.size() < 2) {
        rep.notes.push_back("oracle skipped: too few usable integration paths");
        return rep;
    }

    std::optional<std::vector<Integer>> rel;
    try {
        rel = integer_relation(samples[0], digits, Integer(1000));
    } catch (const PrecisionTooLow&) {
        rep.notes.push_back("integer relation scan inconclusive at this precision");
        return rep;
    }
    if (!rel) {
        rep.notes.push_back("no integer relation among the integrals at height 1000");
        return rep;
    }

    BigComplex acc = BigComplex::zero(emb.prec());
    BigFloat scale = BigFloat::from_long(1, emb.prec());
    for (size_t i = 0; i < samples[1].size(); ++i) {
        BigComplex term = BigComplex::from_rational(Rational((*rel)[i]), emb.prec()) * samples[1][i];
        acc += term;
        scale += abs(term);
    }
    if (!(abs(acc) < scale * tol)) {
        rep.notes.push_back("an integer relation on one path was not path-stable");
        return rep;
    }
    if ((*rel)[0] == 0) {
        rep.notes.push_back("path-stable relation among the trace images alone");
        return rep;
    }
    rep.consistent = false;
    rep.notes.push_back("path-stable integer relation ties the target to the trace images");
    return rep;
}

std::vector<FnElem> minpoly_over_x(const FnElem& g) {
    const CurvePtr& c = g.curve();
    if (!c || g.num_y().is_zero()) return {-g, FnElem(AlgebraicNumber(1))};
    FnElem a = FnElem::rational(c, g.num_x(), g.den());
    FnElem b = FnElem::rational(c, g.num_y(), g.den());
    FnElem rhs = FnElem::rational(c, c->rhs(), APoly(AlgebraicNumber(1)));
    return {a * a - b * b * rhs, FnElem(AlgebraicNumber(-2)) * a, FnElem::one(c)};
}

} // namespace algint
