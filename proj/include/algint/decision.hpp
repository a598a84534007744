#ifndef ALGINT_DECISION_HPP
#define ALGINT_DECISION_HPP

#include <optional>
#include <string>
#include <vector>

#include "algint/mordell_weil.hpp"
#include "algint/quotient.hpp"
#include "algint/trace.hpp"

namespace algint {

// The allowed set the target is decided against.  GeneralSet: exactly the
// listed pairs.  EllipticSet: every elliptic curve with every rational
// differential (plus any listed pairs).  LogSet: the listed pairs together
// with dx/x on a line, which makes every d log f of a function f on the
// target curve reachable.
enum class Mode { GeneralSet, EllipticSet, LogSet };

enum class Answer { Yes, No, NoUpToBudget };

std::string to_string(Mode m);
std::string to_string(Answer a);

struct Budgets {
    MwBudget mw;
    // principality of k * D is tested for k up to this bound
    int torsion_k_max = 12;
    // recorded search depth for elliptic quotients (the involution search
    // works at degree two regardless; the gap is surfaced in qualifications)
    int quotient_degree_bound = 4;
    // numeric oracle working precision and path count
    long digits = 50;
    int oracle_paths = 3;
};

// A correspondence oriented for tracing: left is the allowed pair's curve
// (where the form lives), right is the target curve.
struct TaggedCorrespondence {
    Correspondence z;
    size_t allowed = 0;
};

struct Problem {
    Differential target;
    std::vector<Differential> allowed;
    std::vector<TaggedCorrespondence> correspondences;
    bool correspondences_complete = false;
    Mode mode = Mode::GeneralSet;
    Budgets budgets;
};

// One traced summand c * trace_image(z, form).  form always lives on z.left;
// when the pair was user-supplied, allowed holds its index and form is a
// copy of that entry.  Synthesized terms (elliptic mode) leave allowed empty.
struct CertTerm {
    AlgebraicNumber c;
    Correspondence z;
    std::optional<size_t> allowed;
    Differential form;
};

// One logarithmic summand e * d log f with f on the target curve.
struct LogTerm {
    AlgebraicNumber e;
    FnElem f;
};

// Witness of the identity
//   target = sum c_i trace_image(z_i, w_i) + sum e_j d log f_j + d gamma,
// which replays to the exact zero function-field element.
struct Certificate {
    std::vector<CertTerm> terms;
    std::vector<LogTerm> logs;
    FnElem gamma;
    // human-readable replay script; the structured fields are authoritative
    std::vector<std::string> trace;
};

// One budget or completeness assumption a verdict leans on.
struct Qualification {
    std::string key;
    std::string detail;
};

struct Verdict {
    Answer answer = Answer::NoUpToBudget;
    std::optional<Certificate> certificate;
    // evidence for a refutation (separating functional, residue witness)
    std::string refutation;
    std::vector<Qualification> qualifications;
};

// Solve w0 = sum c_i L[i] + d gamma inside the forms with pole divisor
// bounded by m; every input form must have its poles confined in m.
struct SpanSolution {
    std::vector<AlgebraicNumber> coeffs;
    FnElem gamma;
};
std::optional<SpanSolution> span_decide(const Differential& w0,
                                        const std::vector<Differential>& L, const Divisor& m,
                                        FieldTower& tower);

// Allowed forms all residue-free: span test over trace-images and exact
// forms.  A target residue is an immediate complete refutation.
Verdict decide_residueless(const Problem& p, FieldTower& tower);

// Some allowed form carries a residue (or the mode grants logarithms):
// residues are matched through trace-images and d log f terms whose divisor
// classes are torsion, then the residue-free remainder runs the span test.
Verdict decide_with_residues(const Problem& p, FieldTower& tower);

// Decides integrability in terms of every elliptic curve with every rational
// differential: elliptic quotient maps supply the generators of the elliptic
// part, third-kind elliptic forms and d log terms absorb the residues.
Verdict decide_elliptic(const Problem& p, FieldTower& tower);

// Dispatch on mode and residue structure; every YES is replayed before it is
// returned and cross-checked numerically.
Verdict decide(const Problem& p, FieldTower& tower);

// Exact symbolic replay of the certificate identity.
bool replay(const Problem& p, const Certificate& cert);

// Independent numeric examination of a verdict: YES certificates are
// integrated along random paths, complete refutations are scanned for
// integer relations among the relevant integrals.  Advisory only, except
// that a reproducible contradiction sets consistent = false.
struct OracleReport {
    bool consistent = true;
    int paths = 0;
    std::vector<std::string> notes;
};
OracleReport cross_check(const Problem& p, const Verdict& v, FieldTower& tower);

// Monic minimal polynomial of g over the rational subfield K(x), low to high
// degree; y-free coefficients, degree 1 or 2.
std::vector<FnElem> minpoly_over_x(const FnElem& g);

} // namespace algint

#endif
