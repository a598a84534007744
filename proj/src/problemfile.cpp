#include "algint/problemfile.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algint/errors.hpp"

namespace algint {

namespace {

// ---------------------------------------------------------------------------
// tokens

struct Tok {
    enum class K { Int, Name, Op, End };
    K k = K::End;
    std::string s;
    Integer n = 0;
    int line = 1;
    int col = 1;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return name_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

// One line of input; `#` starts a comment.  Unknown bytes are diagnosed, not
// skipped, so fuzzed input cannot smuggle characters past the grammar.
std::vector<Tok> lex_line(const std::string& text, int line_no) {
    static const std::string ops = "+-*/^(){}[]=,~:";
    std::vector<Tok> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Tok t;
        t.line = line_no;
        t.col = static_cast<int>(i) + 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.k = Tok::K::Int;
            t.s = text.substr(i, j - i);
            t.n = Integer(t.s);
            i = j;
        } else if (name_start(c)) {
            size_t j = i;
            while (j < text.size() && name_char(text[j])) ++j;
            t.k = Tok::K::Name;
            t.s = text.substr(i, j - i);
            i = j;
        } else if (ops.find(c) != std::string::npos) {
            t.k = Tok::K::Op;
            t.s = std::string(1, c);
            ++i;
        } else {
            throw ParseError(line_no, static_cast<int>(i) + 1,
                             "unexpected character '" + std::string(1, c) + "'");
        }
        out.push_back(std::move(t));
    }
    Tok end;
    end.k = Tok::K::End;
    end.line = line_no;
    end.col = static_cast<int>(text.size()) + 1;
    out.push_back(end);
    return out;
}

struct Cursor {
    const std::vector<Tok>* toks;
    size_t at = 0;

    const Tok& peek() const { return (*toks)[std::min(at, toks->size() - 1)]; }
    const Tok& next() {
        const Tok& t = peek();
        if (t.k != Tok::K::End) ++at;
        return t;
    }
    bool is_op(const std::string& s) const { return peek().k == Tok::K::Op && peek().s == s; }
    bool is_name(const std::string& s) const { return peek().k == Tok::K::Name && peek().s == s; }
    void expect_op(const std::string& s) {
        if (!is_op(s)) throw ParseError(peek().line, peek().col, "expected '" + s + "'");
        next();
    }
    std::string expect_name(const std::string& what) {
        if (peek().k != Tok::K::Name)
            throw ParseError(peek().line, peek().col, "expected " + what);
        return next().s;
    }
    void expect_end() {
        if (peek().k != Tok::K::End)
            throw ParseError(peek().line, peek().col, "unexpected trailing input");
    }
};

[[noreturn]] void fail(const Tok& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
}

// ---------------------------------------------------------------------------
// expression evaluation
//
// One grammar, three value algebras.  Standard precedence; juxtaposition
// multiplies ("x/y dx" is (x/y)*dx); '^' takes an integer literal exponent.
// An Algebra supplies: Value, from_int, var, neg, add, sub, mul, div, pow.
// Every operation receives the operator token for positioned diagnostics.

long small_exponent(const Tok& t, const Integer& n, long cap) {
    if (!n.fits_slong_p()) fail(t, "exponent out of range");
    long e = n.get_si();
    if (e > cap || e < -cap) fail(t, "exponent out of range");
    return e;
}

template <class A>
typename A::Value parse_expr(A& alg, Cursor& c);

template <class A>
typename A::Value parse_atom(A& alg, Cursor& c) {
    const Tok& t = c.peek();
    if (t.k == Tok::K::Int) {
        c.next();
        return alg.from_int(t.n);
    }
    if (t.k == Tok::K::Name) {
        if (t.s == "sqrt")
            fail(t, "sqrt is not part of the expression grammar; radicals enter "
                    "through a curve equation");
        c.next();
        return alg.var(t);
    }
    if (c.is_op("(")) {
        c.next();
        auto v = parse_expr(alg, c);
        if (!c.is_op(")")) fail(c.peek(), "expected ')'");
        c.next();
        return v;
    }
    fail(t, "expected a number, a name, or '('");
}

template <class A>
typename A::Value parse_factor(A& alg, Cursor& c) {
    if (c.is_op("-")) {
        const Tok op = c.next();
        return alg.neg(op, parse_factor(alg, c));
    }
    auto v = parse_atom(alg, c);
    while (c.is_op("^")) {
        const Tok op = c.next();
        bool negative = false;
        if (c.is_op("-")) {
            c.next();
            negative = true;
        }
        if (c.peek().k != Tok::K::Int) fail(c.peek(), "expected an integer exponent");
        const Tok& e = c.next();
        long n = small_exponent(e, e.n, 512);
        v = alg.pow(op, v, negative ? -n : n);
    }
    return v;
}

template <class A>
bool starts_factor(const Cursor& c) {
    const Tok& t = c.peek();
    return t.k == Tok::K::Int || t.k == Tok::K::Name || (t.k == Tok::K::Op && t.s == "(");
}

template <class A>
typename A::Value parse_term(A& alg, Cursor& c) {
    auto v = parse_factor(alg, c);
    while (true) {
        if (c.is_op("*") || c.is_op("/")) {
            const Tok op = c.next();
            auto r = parse_factor(alg, c);
            v = (op.s == "*") ? alg.mul(op, v, r) : alg.div(op, v, r);
        } else if (starts_factor<A>(c)) {
            const Tok op = c.peek();
            auto r = parse_factor(alg, c);
            v = alg.mul(op, v, r);
        } else {
            return v;
        }
    }
}

template <class A>
typename A::Value parse_expr(A& alg, Cursor& c) {
    auto v = parse_term(alg, c);
    while (c.is_op("+") || c.is_op("-")) {
        const Tok op = c.next();
        auto r = parse_term(alg, c);
        v = (op.s == "+") ? alg.add(op, v, r) : alg.sub(op, v, r);
    }
    return v;
}

// Function-field elements with a differential degree: plain functions have
// degree 0, forms degree 1.  "dx" (the d of the curve's x coordinate) is the
// unique degree-1 atom.
struct FormAlgebra {
    struct Value {
        FnElem f;
        int d = 0;
    };

    CurvePtr c;
    const std::map<std::string, AlgebraicNumber>* constants;

    void size_guard(const Tok& t, const Value& v) const {
        if (v.f.num_x().degree() > 2000 || v.f.num_y().degree() > 2000 ||
            v.f.den().degree() > 2000)
            fail(t, "expression too large");
    }

    Value from_int(const Integer& n) const { return {FnElem(AlgebraicNumber(Rational(n))), 0}; }

    Value var(const Tok& t) const {
        if (c) {
            if (t.s == c->xname()) return {FnElem::x_of(c), 0};
            if (!c->is_line() && t.s == c->yname()) return {FnElem::y_of(c), 0};
            if (t.s == "d" + c->xname()) return {FnElem::one(c), 1};
        }
        auto it = constants->find(t.s);
        if (it != constants->end()) return {FnElem(it->second), 0};
        fail(t, "unknown identifier '" + t.s + "'");
    }

    Value neg(const Tok&, Value v) const { return {-v.f, v.d}; }

    Value add(const Tok& t, const Value& a, const Value& b) const {
        if (a.d != b.d) fail(t, "cannot add a function to a differential");
        return {a.f + b.f, a.d};
    }
    Value sub(const Tok& t, const Value& a, const Value& b) const {
        if (a.d != b.d) fail(t, "cannot subtract a function from a differential");
        return {a.f - b.f, a.d};
    }
    Value mul(const Tok& t, const Value& a, const Value& b) const {
        if (a.d + b.d > 1) fail(t, "a form has exactly one differential factor");
        Value v{a.f * b.f, a.d + b.d};
        size_guard(t, v);
        return v;
    }
    Value div(const Tok& t, const Value& a, const Value& b) const {
        if (b.d != 0) fail(t, "cannot divide by a differential");
        if (b.f.is_zero()) fail(t, "division by zero");
        return {a.f / b.f, a.d};
    }
    Value pow(const Tok& t, const Value& a, long e) const {
        if (a.d != 0 && e != 1) fail(t, "cannot raise a differential to a power");
        if (e < 0 && a.f.is_zero()) fail(t, "division by zero");
        FnElem base = e < 0 ? a.f.inverse() : a.f;
        FnElem out = FnElem(AlgebraicNumber(1));
        for (long i = 0; i < (e < 0 ? -e : e); ++i) {
            out = out * base;
            size_guard(t, {out, 0});
        }
        return {out, a.d};
    }
};

// Univariate polynomials over the constant field.
struct PolyAlgebra {
    struct Value {
        APoly p;
    };

    std::string var_name;
    const std::map<std::string, AlgebraicNumber>* constants;

    void size_guard(const Tok& t, const APoly& p) const {
        if (p.degree() > 4096) fail(t, "polynomial degree too large");
    }

    Value from_int(const Integer& n) const { return {APoly(AlgebraicNumber(Rational(n)))}; }

    Value var(const Tok& t) const {
        if (t.s == var_name) return {APoly::var()};
        auto it = constants->find(t.s);
        if (it != constants->end()) return {APoly(it->second)};
        fail(t, "unknown identifier '" + t.s + "'");
    }

    Value neg(const Tok&, const Value& v) const { return {APoly(AlgebraicNumber(-1)) * v.p}; }
    Value add(const Tok&, const Value& a, const Value& b) const { return {a.p + b.p}; }
    Value sub(const Tok&, const Value& a, const Value& b) const { return {a.p - b.p}; }
    Value mul(const Tok& t, const Value& a, const Value& b) const {
        Value v{a.p * b.p};
        size_guard(t, v.p);
        return v;
    }
    Value div(const Tok& t, const Value& a, const Value& b) const {
        if (b.p.degree() > 0) fail(t, "cannot divide by a polynomial here");
        if (b.p.is_zero()) fail(t, "division by zero");
        return {a.p * APoly(b.p[0].inverse())};
    }
    Value pow(const Tok& t, const Value& a, long e) const {
        if (e < 0) fail(t, "negative exponents are not allowed here");
        APoly out(AlgebraicNumber(1));
        for (long i = 0; i < e; ++i) {
            out = out * a.p;
            size_guard(t, out);
        }
        return {out};
    }
};

// Polynomials in the four coordinate slots of a correspondence.
struct RelAlgebra {
    struct Value {
        std::map<std::array<int, 4>, AlgebraicNumber> terms;
    };

    // slot index per variable name; collisions are rejected at setup
    std::map<std::string, int> slots;
    const std::map<std::string, AlgebraicNumber>* constants;

    void size_guard(const Tok& t, const Value& v) const {
        if (v.terms.size() > 20000) fail(t, "relation too large");
    }

    Value from_int(const Integer& n) const {
        Value v;
        AlgebraicNumber a{Rational(n)};
        if (!a.is_zero()) v.terms[{0, 0, 0, 0}] = a;
        return v;
    }

    Value var(const Tok& t) const {
        auto s = slots.find(t.s);
        if (s != slots.end()) {
            Value v;
            std::array<int, 4> m{0, 0, 0, 0};
            m[s->second] = 1;
            v.terms[m] = AlgebraicNumber(1);
            return v;
        }
        auto it = constants->find(t.s);
        if (it != constants->end()) {
            Value v;
            if (!it->second.is_zero()) v.terms[{0, 0, 0, 0}] = it->second;
            return v;
        }
        fail(t, "unknown identifier '" + t.s + "'");
    }

    Value neg(const Tok&, Value v) const {
        for (auto& kv : v.terms) kv.second = -kv.second;
        return v;
    }
    Value add(const Tok&, Value a, const Value& b) const {
        for (const auto& kv : b.terms) {
            auto it = a.terms.find(kv.first);
            if (it == a.terms.end()) {
                a.terms.insert(kv);
            } else {
                it->second += kv.second;
                if (it->second.is_zero()) a.terms.erase(it);
            }
        }
        return a;
    }
    Value sub(const Tok& t, const Value& a, Value b) const { return add(t, a, neg(t, std::move(b))); }
    Value mul(const Tok& t, const Value& a, const Value& b) const {
        Value v;
        for (const auto& p : a.terms)
            for (const auto& q : b.terms) {
                std::array<int, 4> m;
                for (int i = 0; i < 4; ++i) {
                    m[i] = p.first[i] + q.first[i];
                    if (m[i] > 512) fail(t, "relation degree too large");
                }
                auto it = v.terms.find(m);
                if (it == v.terms.end()) {
                    v.terms[m] = p.second * q.second;
                } else {
                    it->second += p.second * q.second;
                    if (it->second.is_zero()) v.terms.erase(it);
                }
            }
        size_guard(t, v);
        return v;
    }
    Value div(const Tok& t, const Value& a, const Value& b) const {
        if (b.terms.size() == 1 && b.terms.begin()->first == std::array<int, 4>{0, 0, 0, 0})
            return mul(t, a, {{{{{0, 0, 0, 0}, b.terms.begin()->second.inverse()}}}});
        fail(t, "division is not allowed in correspondence relations");
    }
    Value pow(const Tok& t, const Value& a, long e) const {
        if (e < 0) fail(t, "negative exponents are not allowed here");
        Value out = from_int(1);
        for (long i = 0; i < e; ++i) out = mul(t, out, a);
        return out;
    }
};

CorrPoly rel_to_poly(const RelAlgebra::Value& v, const Tok& at) {
    if (v.terms.empty()) fail(at, "a correspondence relation vanishes identically");
    std::vector<CorrMono> ms;
    for (const auto& kv : v.terms) {
        CorrMono m;
        m.xl = kv.first[0];
        m.yl = kv.first[1];
        m.xr = kv.first[2];
        m.yr = kv.first[3];
        m.c = kv.second;
        ms.push_back(m);
    }
    return CorrPoly(std::move(ms));
}

FormAlgebra::Value eval_form_tokens(Cursor& c, const CurvePtr& curve,
                                    const std::map<std::string, AlgebraicNumber>& constants) {
    FormAlgebra alg{curve, &constants};
    return parse_expr(alg, c);
}

// ---------------------------------------------------------------------------
// file sections

struct FileParser {
    FieldTower& tower;
    ProblemFile pf;
    std::set<std::string> names; // every declared name, across namespaces
    std::optional<std::string> mode_word;
    Tok decide_at;

    explicit FileParser(FieldTower& t) : tower(t) {}

    void claim(const Tok& t, const std::string& name) {
        if (!names.insert(name).second) fail(t, "duplicate name '" + name + "'");
    }

    void field_line(Cursor& c) {
        if (!pf.constants.empty())
            fail(c.peek(), "a single declared field generator is supported");
        const Tok name = c.peek();
        std::string gen = c.expect_name("a generator name");
        c.expect_op(":");
        PolyAlgebra alg{gen, &pf.constants};
        APoly f = parse_expr(alg, c).p;
        c.expect_end();
        if (f.degree() < 2) fail(name, "the generator needs a minimal polynomial of degree >= 2");
        claim(name, gen);
        try {
            AlgebraicNumber a = adjoin_root(f, tower.top(), gen);
            tower.absorb(a.field());
            pf.constants[gen] = a;
        } catch (const Error& e) {
            fail(name, e.what());
        }
    }

    void curve_line(Cursor& c) {
        const Tok name = c.peek();
        std::string label = c.expect_name("a curve name");
        c.expect_op(":");
        claim(name, label);
        if (c.is_name("line")) {
            c.next();
            std::string xv = "x";
            if (c.peek().k == Tok::K::Name) xv = c.next().s;
            c.expect_end();
            pf.curves.emplace_back(label, Curve::line(label, xv));
            return;
        }
        const Tok yt = c.peek();
        std::string yv = c.expect_name("a coordinate, like y^2 = ...");
        c.expect_op("^");
        if (c.peek().k != Tok::K::Int || c.peek().n != 2) fail(c.peek(), "expected the exponent 2");
        c.next();
        c.expect_op("=");
        // the x coordinate is the one name of the right side that is not a
        // declared constant
        std::string xv;
        for (size_t i = c.at; i < c.toks->size(); ++i) {
            const Tok& t = (*c.toks)[i];
            if (t.k != Tok::K::Name || pf.constants.count(t.s) || t.s == "sqrt") continue;
            if (t.s == yv) fail(t, "the right side must not mention '" + yv + "'");
            if (xv.empty()) xv = t.s;
            else if (t.s != xv) fail(t, "one variable is allowed on the right side");
        }
        if (xv.empty()) xv = yv == "x" ? "t" : "x";
        PolyAlgebra alg{xv, &pf.constants};
        APoly rhs = parse_expr(alg, c).p;
        c.expect_end();
        try {
            pf.curves.emplace_back(label, Curve::hyperelliptic(label, rhs, xv, yv));
        } catch (const Error& e) {
            fail(yt, e.what());
        }
    }

    void form_line(Cursor& c) {
        const Tok name = c.peek();
        std::string fname = c.expect_name("a form name");
        if (!c.is_name("on")) fail(c.peek(), "expected 'on'");
        c.next();
        const Tok ct = c.peek();
        std::string cname = c.expect_name("a curve name");
        CurvePtr curve = pf.curve(cname);
        if (!curve) fail(ct, "unknown curve '" + cname + "'");
        c.expect_op("=");
        claim(name, fname);
        auto v = eval_form_tokens(c, curve, pf.constants);
        c.expect_end();
        if (v.d != 1)
            fail(name, "a form needs exactly one differential factor, like d" + curve->xname());
        pf.forms.emplace_back(fname, Differential(v.f));
    }

    void correspondence_line(Cursor& c) {
        const Tok name = c.peek();
        std::string label = c.expect_name("a correspondence name");
        c.expect_op(":");
        const Tok lt = c.peek();
        std::string lname = c.expect_name("a curve name");
        c.expect_op("~");
        const Tok rt = c.peek();
        std::string rname = c.expect_name("a curve name");
        CurvePtr left = pf.curve(lname);
        CurvePtr right = pf.curve(rname);
        if (!left) fail(lt, "unknown curve '" + lname + "'");
        if (!right) fail(rt, "unknown curve '" + rname + "'");
        claim(name, label);

        RelAlgebra alg;
        alg.constants = &pf.constants;
        auto bind = [&](const std::string& var, int slot, const Tok& at) {
            if (var.empty()) return;
            if (!alg.slots.emplace(var, slot).second)
                fail(at, "coordinate names of the two sides collide; give one side "
                         "its own names");
        };
        bind(left->xname(), 0, lt);
        if (!left->is_line()) bind(left->yname(), 1, lt);
        bind(right->xname(), 2, rt);
        if (!right->is_line()) bind(right->yname(), 3, rt);

        Correspondence z;
        z.label = label;
        z.left = left;
        z.right = right;
        c.expect_op("{");
        while (true) {
            const Tok at = c.peek();
            auto v = parse_expr(alg, c);
            z.rels.push_back(rel_to_poly(v, at));
            if (c.is_op(",")) {
                c.next();
                continue;
            }
            break;
        }
        c.expect_op("}");
        c.expect_end();
        pf.correspondences.emplace_back(label, std::move(z));
    }

    void query_line(Cursor& c) {
        if (c.is_name("decide")) {
            if (pf.has_query) fail(c.peek(), "a single decide line is supported");
            decide_at = c.next();
            pf.has_query = true;
            pf.target_name = c.expect_name("a form name");
            if (!c.is_name("in")) fail(c.peek(), "expected 'in'");
            c.next();
            c.expect_op("{");
            if (!c.is_op("}")) {
                while (true) {
                    pf.allowed_names.push_back(c.expect_name("a form name"));
                    if (c.is_op(",")) {
                        c.next();
                        continue;
                    }
                    break;
                }
            }
            c.expect_op("}");
            if (c.is_name("mode")) {
                c.next();
                c.expect_op("=");
                const Tok mt = c.peek();
                mode_word = c.expect_name("general, elliptic, or log");
                if (*mode_word != "general" && *mode_word != "elliptic" && *mode_word != "log")
                    fail(mt, "mode is one of general, elliptic, log");
            }
            c.expect_end();
            return;
        }
        if (c.is_name("assert_complete")) {
            c.next();
            c.expect_end();
            pf.problem.correspondences_complete = true;
            return;
        }
        const Tok kt = c.peek();
        std::string key = c.expect_name("a budget key or decide");
        c.expect_op("=");
        if (c.peek().k != Tok::K::Int) fail(c.peek(), "expected an integer");
        const Tok& vt = c.next();
        long val = small_exponent(vt, vt.n, 1000000000L);
        c.expect_end();
        Budgets& b = pf.problem.budgets;
        if (key == "digits") {
            b.digits = val;
            pf.digits_given = true;
        } else if (key == "oracle_paths") {
            b.oracle_paths = static_cast<int>(val);
        } else if (key == "torsion_k_max") {
            b.torsion_k_max = static_cast<int>(val);
        } else if (key == "quotient_degree_bound") {
            b.quotient_degree_bound = static_cast<int>(val);
        } else if (key == "mw_prime_limit") {
            b.mw.prime_limit = val;
        } else {
            fail(kt, "unknown budget key '" + key + "'");
        }
    }

    void assemble() {
        if (!pf.has_query) return;
        const Differential* t = pf.form(pf.target_name);
        if (!t) fail(decide_at, "unknown form '" + pf.target_name + "'");
        pf.problem.target = *t;
        if (mode_word) {
            pf.problem.mode = *mode_word == "elliptic" ? Mode::EllipticSet
                              : *mode_word == "log"    ? Mode::LogSet
                                                       : Mode::GeneralSet;
        }
        for (const auto& name : pf.allowed_names) {
            const Differential* w = pf.form(name);
            if (!w) fail(decide_at, "unknown form '" + name + "'");
            pf.problem.allowed.push_back(*w);
        }
        // every declared correspondence joins the problem in the orientation
        // that traces an allowed form onto the target
        CurvePtr tc = pf.problem.target.curve();
        for (const auto& [label, z] : pf.correspondences) {
            for (size_t i = 0; i < pf.problem.allowed.size(); ++i) {
                CurvePtr ac = pf.problem.allowed[i].curve();
                if (z.left == ac && z.right == tc)
                    pf.problem.correspondences.push_back({z, i});
                else if (z.right == ac && z.left == tc)
                    pf.problem.correspondences.push_back({z.transposed(), i});
            }
        }
    }
};

} // namespace

CurvePtr ProblemFile::curve(const std::string& name) const {
    for (const auto& [n, c] : curves)
        if (n == name) return c;
    return nullptr;
}

const Differential* ProblemFile::form(const std::string& name) const {
    for (const auto& [n, w] : forms)
        if (n == name) return &w;
    return nullptr;
}

const Correspondence* ProblemFile::correspondence(const std::string& label) const {
    for (const auto& [n, z] : correspondences)
        if (n == label) return &z;
    return nullptr;
}

ProblemFile parse_problem_file(const std::string& text, FieldTower& tower) {
    FileParser fp(tower);
    enum class Section { None, Field, Curves, Forms, Corrs, Query };
    Section sec = Section::None;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::vector<Tok> toks = lex_line(line, line_no);
        Cursor c{&toks, 0};
        if (c.peek().k == Tok::K::End) continue;

        if (c.is_op("[")) {
            c.next();
            const Tok st = c.peek();
            std::string s = c.expect_name("a section name");
            c.expect_op("]");
            c.expect_end();
            if (s == "field") sec = Section::Field;
            else if (s == "curves") sec = Section::Curves;
            else if (s == "forms") sec = Section::Forms;
            else if (s == "correspondences") sec = Section::Corrs;
            else if (s == "query") sec = Section::Query;
            else fail(st, "unknown section '" + s + "'");
            continue;
        }

        switch (sec) {
        case Section::None:
            fail(c.peek(), "expected a section header like [curves]");
        case Section::Field: fp.field_line(c); break;
        case Section::Curves: fp.curve_line(c); break;
        case Section::Forms: fp.form_line(c); break;
        case Section::Corrs: fp.correspondence_line(c); break;
        case Section::Query: fp.query_line(c); break;
        }
    }
    fp.assemble();
    return std::move(fp.pf);
}

namespace {

// "line", "line t", or an equation; consumes the cursor to the end.
CurvePtr parse_curve_desc(Cursor& cc, const std::vector<Tok>& toks) {
    std::map<std::string, AlgebraicNumber> constants;
    if (cc.is_name("line")) {
        cc.next();
        std::string xv = "x";
        if (cc.peek().k == Tok::K::Name) xv = cc.next().s;
        cc.expect_end();
        return Curve::line("line", xv);
    }
    const Tok yt = cc.peek();
    std::string yv = cc.expect_name("'line' or an equation like y^2 = x^3 + 1");
    cc.expect_op("^");
    if (cc.peek().k != Tok::K::Int || cc.peek().n != 2) fail(cc.peek(), "expected the exponent 2");
    cc.next();
    cc.expect_op("=");
    std::string xv;
    for (size_t i = cc.at; i < toks.size(); ++i) {
        const Tok& t = toks[i];
        if (t.k != Tok::K::Name || t.s == "sqrt") continue;
        if (t.s == yv) fail(t, "the right side must not mention '" + yv + "'");
        if (xv.empty()) xv = t.s;
        else if (t.s != xv) fail(t, "one variable is allowed on the right side");
    }
    if (xv.empty()) xv = yv == "x" ? "t" : "x";
    PolyAlgebra alg{xv, &constants};
    APoly rhs = parse_expr(alg, cc).p;
    cc.expect_end();
    try {
        return Curve::hyperelliptic("C", rhs, xv, yv);
    } catch (const Error& e) {
        fail(yt, e.what());
    }
}

} // namespace

CurvePtr parse_inline_curve(const std::string& text) {
    std::vector<Tok> toks = lex_line(text, 1);
    Cursor cc{&toks, 0};
    return parse_curve_desc(cc, toks);
}

Differential parse_inline_form(const std::string& text, FieldTower& tower) {
    std::vector<Tok> toks = lex_line(text, 1);
    // split at the top-level 'on'
    size_t split = toks.size();
    int depth = 0;
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].k == Tok::K::Op && (toks[i].s == "(" || toks[i].s == "{")) ++depth;
        if (toks[i].k == Tok::K::Op && (toks[i].s == ")" || toks[i].s == "}")) --depth;
        if (depth == 0 && toks[i].k == Tok::K::Name && toks[i].s == "on") {
            split = i;
            break;
        }
    }
    if (split == toks.size())
        throw ParseError(1, static_cast<int>(text.size()) + 1, "expected 'EXPR on CURVE'");

    std::vector<Tok> ctoks(toks.begin() + split + 1, toks.end());
    Cursor cc{&ctoks, 0};
    CurvePtr curve = parse_curve_desc(cc, ctoks);
    std::map<std::string, AlgebraicNumber> constants;
    (void)tower;

    std::vector<Tok> ftoks(toks.begin(), toks.begin() + split);
    Tok end;
    end.k = Tok::K::End;
    end.line = 1;
    end.col = split < toks.size() ? toks[split].col : 1;
    ftoks.push_back(end);
    Cursor fc{&ftoks, 0};
    auto v = eval_form_tokens(fc, curve, constants);
    fc.expect_end();
    if (v.d != 1)
        throw ParseError(1, 1, "a form needs exactly one differential factor, like d" +
                                   curve->xname());
    return Differential(v.f);
}

FnElem parse_fn(const std::string& text, const CurvePtr& c,
                const std::map<std::string, AlgebraicNumber>& constants) {
    std::vector<Tok> toks = lex_line(text, 1);
    Cursor cur{&toks, 0};
    auto v = eval_form_tokens(cur, c, constants);
    cur.expect_end();
    if (v.d != 0) throw ParseError(1, 1, "expected a function, not a differential");
    if (!c) v.f = FnElem(v.f.constant_value());
    return v.f;
}

Differential parse_form(const std::string& text, const CurvePtr& c,
                        const std::map<std::string, AlgebraicNumber>& constants) {
    std::vector<Tok> toks = lex_line(text, 1);
    Cursor cur{&toks, 0};
    auto v = eval_form_tokens(cur, c, constants);
    cur.expect_end();
    if (v.d != 1)
        throw ParseError(1, 1, "a form needs exactly one differential factor, like d" +
                                   (c ? c->xname() : std::string("x")));
    return Differential(v.f);
}

APoly parse_poly(const std::string& text, const std::string& var,
                 const std::map<std::string, AlgebraicNumber>& constants) {
    std::vector<Tok> toks = lex_line(text, 1);
    Cursor cur{&toks, 0};
    PolyAlgebra alg{var, &constants};
    APoly p = parse_expr(alg, cur).p;
    cur.expect_end();
    return p;
}

CorrPoly parse_slot_rel(const std::string& text,
                        const std::map<std::string, AlgebraicNumber>& constants) {
    std::vector<Tok> toks = lex_line(text, 1);
    Cursor cur{&toks, 0};
    RelAlgebra alg;
    alg.slots = {{"xl", 0}, {"yl", 1}, {"xr", 2}, {"yr", 3}};
    alg.constants = &constants;
    auto v = parse_expr(alg, cur);
    cur.expect_end();
    return rel_to_poly(v, toks.front());
}

} // namespace algint
