#include "algint/document.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algint/errors.hpp"

namespace algint {

namespace {

// Common-denominator presentation: (integer polynomial in the generator) over
// a positive integer.  Rationals read as (n)/(d).
std::string canon_const(const AlgebraicNumber& a) {
    const std::vector<Rational>& co = a.coords();
    Integer den = 1;
    for (const Rational& q : co) den = lcm(den, Integer(q.get_den()));
    std::string gen = a.field() ? a.field()->gen_name() : "";
    std::string poly;
    for (int i = static_cast<int>(co.size()) - 1; i >= 0; --i) {
        Rational v = co[i] * Rational(den);
        Integer c = v.get_num();
        if (c == 0) continue;
        bool neg = c < 0;
        Integer ab = abs(c);
        std::string term;
        if (i == 0) {
            term = ab.get_str();
        } else {
            term = (ab == 1 ? std::string() : ab.get_str() + "*") + gen;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (poly.empty())
            poly = (neg ? "-" : "") + term;
        else
            poly += (neg ? " - " : " + ") + term;
    }
    if (poly.empty()) poly = "0";
    return "(" + poly + ")/(" + den.get_str() + ")";
}

std::vector<NumberField::Ptr> chain_of(const NumberField::Ptr& top) {
    std::vector<NumberField::Ptr> out;
    for (NumberField::Ptr f = top; f; f = f->parent()) out.push_back(f);
    std::reverse(out.begin(), out.end());
    return out;
}

// Deepest number field referenced by the serialized parts of a certificate.
struct FieldScan {
    NumberField::Ptr deepest;

    void add(const AlgebraicNumber& a) {
        if (a.field() && (!deepest || a.field()->level() > deepest->level()))
            deepest = a.field();
    }
    void add(const APoly& p) {
        for (const AlgebraicNumber& c : p.coeffs()) add(c);
    }
    void add(const FnElem& f) {
        add(f.num_x());
        add(f.num_y());
        add(f.den());
    }
    void add(const Correspondence& z) {
        for (const CorrPoly& r : z.rels)
            for (const CorrMono& m : r.terms) add(m.c);
        if (z.left) add(z.left->rhs());
    }
};

std::string render_slot_rel(const CorrPoly& r) {
    std::vector<CorrMono> ms = r.terms;
    std::sort(ms.begin(), ms.end(), [](const CorrMono& a, const CorrMono& b) {
        return std::tie(a.xl, a.yl, a.xr, a.yr) > std::tie(b.xl, b.yl, b.xr, b.yr);
    });
    std::string out;
    for (const CorrMono& m : ms) {
        std::string t = canon_const(m.c);
        const std::pair<const char*, int> slots[4] = {
            {"xl", m.xl}, {"yl", m.yl}, {"xr", m.xr}, {"yr", m.yr}};
        for (const auto& [name, e] : slots) {
            if (e == 0) continue;
            t += "*" + std::string(name);
            if (e > 1) t += "^" + std::to_string(e);
        }
        out += (out.empty() ? "" : " + ") + t;
    }
    return out.empty() ? "(0)/(1)" : out;
}

std::string gamma_minpoly_str(const FnElem& g) {
    std::vector<FnElem> mp = minpoly_over_x(g);
    std::string out;
    for (int i = static_cast<int>(mp.size()) - 1; i >= 0; --i) {
        if (mp[i].is_zero()) continue;
        std::string term = "(" + mp[i].str() + ")";
        if (i > 0) {
            term += "*T";
            if (i > 1) term += "^" + std::to_string(i);
        }
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Key-value emission shared by the text and JSON renderings, so both carry
// exactly the same tree in the same order.
struct Emitter {
    std::string text;
    nlohmann::ordered_json json = nlohmann::ordered_json::object();

    void put(const std::string& key, const std::string& value) {
        text += key + ": " + value + "\n";
        json[key] = value;
    }
    void put(const std::string& key, size_t n) { put(key, std::to_string(n)); }
};

void emit(Emitter& e, const Verdict& v, const ProblemFile& pf) {
    e.put("format", "algint-verdict 1");
    e.put("answer", to_string(v.answer));
    e.put("target", pf.target_name.empty() ? "-" : pf.target_name);
    e.put("mode", to_string(pf.problem.mode));
    if (v.answer != Answer::Yes) e.put("refutation", v.refutation);

    e.put("qualifications", v.qualifications.size());
    for (size_t i = 0; i < v.qualifications.size(); ++i) {
        std::string p = "qualification." + std::to_string(i + 1);
        e.put(p + ".key", v.qualifications[i].key);
        e.put(p + ".note", v.qualifications[i].detail);
    }

    FieldScan scan;
    if (v.certificate) {
        const Certificate& c = *v.certificate;
        for (const CertTerm& t : c.terms) {
            scan.add(t.c);
            if (!t.allowed) {
                scan.add(t.z);
                scan.add(t.form.fn());
            }
        }
        for (const LogTerm& l : c.logs) {
            scan.add(l.e);
            scan.add(l.f);
        }
        scan.add(c.gamma);
    }
    std::vector<NumberField::Ptr> chain = chain_of(scan.deepest);
    e.put("fields", chain.size());
    for (size_t i = 0; i < chain.size(); ++i) {
        std::string p = "field." + std::to_string(i + 1);
        e.put(p + ".name", chain[i]->gen_name());
        e.put(p + ".minpoly", chain[i]->minpoly().to_string(chain[i]->gen_name()));
        if (chain[i]->parent()) {
            QPoly embed(chain[i]->parent_embed());
            e.put(p + ".lift", embed.to_string(chain[i]->gen_name()));
        }
    }

    if (!v.certificate) {
        e.put("hash", "fnv1a64 " + hex16(fnv1a64(e.text)));
        return;
    }
    const Certificate& c = *v.certificate;

    e.put("terms", c.terms.size());
    for (size_t i = 0; i < c.terms.size(); ++i) {
        const CertTerm& t = c.terms[i];
        std::string p = "term." + std::to_string(i + 1);
        e.put(p + ".c", canon_const(t.c));
        if (t.allowed) {
            e.put(p + ".source", "corr " + t.z.label + " form " + pf.allowed_names[*t.allowed]);
        } else {
            e.put(p + ".source", "synthesized");
            e.put(p + ".z.label", t.z.label);
            const CurvePtr& l = t.z.left;
            if (l->is_line()) {
                e.put(p + ".z.left", "line " + l->label() + " " + l->xname());
            } else {
                e.put(p + ".z.left",
                      "hyper " + l->label() + " " + l->xname() + " " + l->yname());
                e.put(p + ".z.rhs", l->rhs().to_string(l->xname()));
            }
            e.put(p + ".z.rels", t.z.rels.size());
            for (size_t j = 0; j < t.z.rels.size(); ++j)
                e.put(p + ".z.rel." + std::to_string(j + 1), render_slot_rel(t.z.rels[j]));
            e.put(p + ".form", t.form.str());
        }
    }

    e.put("logs", c.logs.size());
    for (size_t i = 0; i < c.logs.size(); ++i) {
        std::string p = "log." + std::to_string(i + 1);
        e.put(p + ".e", canon_const(c.logs[i].e));
        e.put(p + ".f", c.logs[i].f.str());
    }

    e.put("gamma", c.gamma.str());
    e.put("gamma.minpoly", gamma_minpoly_str(c.gamma));

    e.put("script", c.trace.size());
    for (size_t i = 0; i < c.trace.size(); ++i)
        e.put("script." + std::to_string(i + 1), c.trace[i]);

    e.put("hash", "fnv1a64 " + hex16(fnv1a64(e.text)));
}

// ---------------------------------------------------------------------------
// reading documents back

struct DocReader {
    std::vector<std::pair<std::string, std::string>> kv;
    std::map<std::string, size_t> index;
    int hash_line = -1;

    explicit DocReader(const std::string& text) {
        int line_no = 0;
        size_t pos = 0;
        while (pos < text.size()) {
            size_t nl = text.find('\n', pos);
            std::string line =
                text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            pos = nl == std::string::npos ? text.size() : nl + 1;
            ++line_no;
            if (line.empty()) continue;
            size_t sep = line.find(": ");
            if (sep == std::string::npos) {
                if (line.back() == ':')
                    sep = line.size() - 1;
                else
                    throw ParseError(line_no, 1, "expected 'key: value'");
            }
            std::string key = line.substr(0, sep);
            std::string value = sep + 2 <= line.size() ? line.substr(sep + 2) : "";
            if (!index.emplace(key, kv.size()).second)
                throw ParseError(line_no, 1, "duplicate key '" + key + "'");
            kv.emplace_back(std::move(key), std::move(value));
        }
    }

    const std::string* find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? nullptr : &kv[it->second].second;
    }
    const std::string& need(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError(1, 1, "missing key '" + key + "'");
        return *v;
    }
    size_t count(const std::string& key) const {
        const std::string& v = need(key);
        try {
            size_t n = std::stoul(v);
            if (n > 10000) throw ParseError(1, 1, "count too large for '" + key + "'");
            return n;
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            throw ParseError(1, 1, "expected a count for '" + key + "'");
        }
    }
};

AlgebraicNumber parse_const(const std::string& text,
                            const std::map<std::string, AlgebraicNumber>& constants) {
    return parse_fn(text, nullptr, constants).constant_value();
}

} // namespace

std::string render_verdict(const Verdict& v, const ProblemFile& pf) {
    Emitter e;
    emit(e, v, pf);
    return e.text;
}

std::string render_verdict_json(const Verdict& v, const ProblemFile& pf) {
    Emitter e;
    emit(e, v, pf);
    return e.json.dump(2) + "\n";
}

ParsedDocument parse_verdict_document(const std::string& text, const ProblemFile& pf,
                                      FieldTower& tower) {
    DocReader doc(text);
    ParsedDocument out;

    if (doc.need("format") != "algint-verdict 1")
        throw ParseError(1, 1, "unrecognized document format");
    const std::string& ans = doc.need("answer");
    if (ans == "YES") out.answer = Answer::Yes;
    else if (ans == "NO") out.answer = Answer::No;
    else if (ans == "NO_UP_TO_BUDGET") out.answer = Answer::NoUpToBudget;
    else throw ParseError(1, 1, "unrecognized answer '" + ans + "'");

    if (const std::string* r = doc.find("refutation")) out.refutation = *r;
    size_t nq = doc.count("qualifications");
    for (size_t i = 1; i <= nq; ++i) {
        std::string p = "qualification." + std::to_string(i);
        out.qualifications.push_back({doc.need(p + ".key"), doc.need(p + ".note")});
    }

    // the hash covers every byte before its own line
    size_t hpos = text.rfind("hash: fnv1a64 ");
    if (hpos == std::string::npos || (hpos != 0 && text[hpos - 1] != '\n'))
        throw ParseError(1, 1, "missing hash line");
    const std::string& stated = doc.need("hash");
    if (stated.size() != 24 || stated.compare(0, 8, "fnv1a64 ") != 0 ||
        stated.find_first_not_of("0123456789abcdef", 8) != std::string::npos)
        throw ParseError(1, 1, "malformed hash line");
    out.stated_hash = std::stoull(stated.substr(8), nullptr, 16);
    out.hash_matches = fnv1a64(text.substr(0, hpos)) == out.stated_hash;

    // reconstruct the constant field chain
    std::map<std::string, AlgebraicNumber> constants = pf.constants;
    std::vector<NumberField::Ptr> existing = chain_of(tower.top());
    NumberField::Ptr level;
    size_t nf = doc.count("fields");
    for (size_t i = 1; i <= nf; ++i) {
        std::string p = "field." + std::to_string(i);
        std::string name = doc.need(p + ".name");
        APoly mp_a = parse_poly(doc.need(p + ".minpoly"), name, {});
        QPoly mp;
        try {
            mp = rational_poly(mp_a);
        } catch (const Error&) {
            throw ParseError(1, 1, "field minimal polynomial must have rational coefficients");
        }
        if (i <= existing.size()) {
            if (existing[i - 1]->gen_name() != name || !(existing[i - 1]->minpoly() == mp))
                throw ParseError(1, 1,
                                 "document field chain does not match the problem's field");
            level = existing[i - 1];
        } else {
            std::vector<Rational> embed;
            if (const std::string* l = doc.find(p + ".lift")) {
                APoly e_a = parse_poly(*l, name, {});
                for (int k = 0; k <= e_a.degree(); ++k) embed.push_back(e_a[k].to_rational());
            }
            try {
                level = NumberField::create(mp, name, level, embed);
            } catch (const Error& err) {
                throw ParseError(1, 1, err.what());
            }
        }
        constants[name] = level->generator();
    }
    if (level) tower.absorb(level);

    if (out.answer != Answer::Yes) return out;

    CurvePtr tc = pf.problem.target.curve();
    Certificate cert;
    size_t nt = doc.count("terms");
    for (size_t i = 1; i <= nt; ++i) {
        std::string p = "term." + std::to_string(i);
        CertTerm t;
        t.c = parse_const(doc.need(p + ".c"), constants);
        const std::string& src = doc.need(p + ".source");
        if (src.compare(0, 5, "corr ") == 0) {
            size_t fm = src.find(" form ");
            if (fm == std::string::npos) throw ParseError(1, 1, "malformed term source");
            std::string zlabel = src.substr(5, fm - 5);
            std::string wname = src.substr(fm + 6);
            const Correspondence* z = pf.correspondence(zlabel);
            if (!z) throw ParseError(1, 1, "unknown correspondence '" + zlabel + "'");
            auto it = std::find(pf.allowed_names.begin(), pf.allowed_names.end(), wname);
            if (it == pf.allowed_names.end())
                throw ParseError(1, 1, "'" + wname + "' is not in the allowed set");
            t.allowed = static_cast<size_t>(it - pf.allowed_names.begin());
            t.form = pf.problem.allowed[*t.allowed];
            t.z = z->left == t.form.curve() && z->right == tc ? *z : z->transposed();
            if (t.z.left != t.form.curve() || t.z.right != tc)
                throw ParseError(1, 1, "correspondence '" + zlabel +
                                           "' does not connect the allowed form to the target");
        } else if (src == "synthesized") {
            std::string kind = doc.need(p + ".z.left");
            CurvePtr left;
            // "line LABEL X" or "hyper LABEL X Y"
            std::vector<std::string> parts;
            size_t at = 0;
            while (at < kind.size()) {
                size_t sp = kind.find(' ', at);
                parts.push_back(kind.substr(at, sp == std::string::npos ? sp : sp - at));
                at = sp == std::string::npos ? kind.size() : sp + 1;
            }
            try {
                if (parts.size() == 3 && parts[0] == "line") {
                    left = Curve::line(parts[1], parts[2]);
                } else if (parts.size() == 4 && parts[0] == "hyper") {
                    APoly rhs = parse_poly(doc.need(p + ".z.rhs"), parts[2], constants);
                    left = Curve::hyperelliptic(parts[1], rhs, parts[2], parts[3]);
                } else {
                    throw ParseError(1, 1, "malformed curve description '" + kind + "'");
                }
            } catch (const ParseError&) {
                throw;
            } catch (const Error& err) {
                throw ParseError(1, 1, err.what());
            }
            t.z.label = doc.need(p + ".z.label");
            t.z.left = left;
            t.z.right = tc;
            size_t nr = doc.count(p + ".z.rels");
            for (size_t j = 1; j <= nr; ++j)
                t.z.rels.push_back(
                    parse_slot_rel(doc.need(p + ".z.rel." + std::to_string(j)), constants));
            t.form = parse_form(doc.need(p + ".form"), left, constants);
        } else {
            throw ParseError(1, 1, "malformed term source");
        }
        cert.terms.push_back(std::move(t));
    }

    size_t nl = doc.count("logs");
    for (size_t i = 1; i <= nl; ++i) {
        std::string p = "log." + std::to_string(i);
        LogTerm l;
        l.e = parse_const(doc.need(p + ".e"), constants);
        l.f = parse_fn(doc.need(p + ".f"), tc, constants);
        cert.logs.push_back(std::move(l));
    }

    cert.gamma = parse_fn(doc.need("gamma"), tc, constants);
    size_t ns = doc.count("script");
    for (size_t i = 1; i <= ns; ++i)
        cert.trace.push_back(doc.need("script." + std::to_string(i)));

    out.certificate = std::move(cert);
    return out;
}

} // namespace algint
