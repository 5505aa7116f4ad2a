#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "jacred/attrlab.hpp"
#include "jacred/corpus.hpp"
#include "jacred/gzpair.hpp"
#include "jacred/reducer.hpp"
#include "jacred/text.hpp"

namespace jacred {

using Json = nlohmann::ordered_json;

/// Map text with the first varcount names (extended with fresh names as needed).
std::string map_text(const PolyMap& f, std::span<const std::string> names);

/// Parses map text; the component count must equal the variable count when
/// `square` is set.
PolyMap map_from_text(std::string_view text, bool square = true);

Json to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);

/// Whitespace-separated rationals, one row per line; '#' starts a comment.
RatMatrix parse_matrix(std::string_view text);
std::string print_matrix(const RatMatrix& m);

/// Certificate document: source and target as map text, one entry per move,
/// and each intermediate as the components that differ from the previous map
/// (extended to the move's output dimension).
Json certificate_to_json(const Certificate& c, std::vector<std::string> source_vars);

/// Throws DomainError or ParseError on malformed documents. The result is not
/// verified; use verify_certificate.
Certificate certificate_from_json(const Json& j);

Json to_json(const CertificateVerdict& v);
Json to_json(const FiberTransportReport& r);
Json to_json(const SampledCheck& s);
Json to_json(const Classification& c, std::span<const std::string> names);
Json to_json(const NilpotencyCheck& n);
Json to_json(const AttributeReport& r);
Json to_json(const ExpectedAttributes& e);
/// Stage dimensions and potentials; timings only when requested.
Json to_json(const ReductionTrace& t, bool timings);
Json to_json(const GZPairing& p, std::span<const std::string> g_names);

}  // namespace jacred
