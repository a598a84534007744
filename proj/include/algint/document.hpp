#ifndef ALGINT_DOCUMENT_HPP
#define ALGINT_DOCUMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "problemfile.hpp"

namespace algint {

// Canonical one-key-per-line rendering of a verdict.  Byte-deterministic for
// a given verdict; the final line is a fnv1a64 hash of every byte above it.
// docs/formats.md is the normative description.
std::string render_verdict(const Verdict& v, const ProblemFile& pf);

// The same tree as JSON with stable member order.  The hash member equals
// the one in the canonical text rendering.
std::string render_verdict_json(const Verdict& v, const ProblemFile& pf);

// A document read back against the problem it came from: enough structure to
// replay the certificate independently.
struct ParsedDocument {
    Answer answer = Answer::NoUpToBudget;
    std::optional<Certificate> certificate;
    std::string refutation;
    std::vector<Qualification> qualifications;
    std::uint64_t stated_hash = 0;
    bool hash_matches = false;
};

ParsedDocument parse_verdict_document(const std::string& text, const ProblemFile& pf,
                                      FieldTower& tower);

} // namespace algint

#endif
