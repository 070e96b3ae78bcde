#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qpseed/augvar.hpp"
#include "qpseed/fence.hpp"
#include "qpseed/qp_mutation.hpp"
#include "qpseed/rigidity.hpp"
#include "qpseed/seed_walker.hpp"

namespace qpseed::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "qpseed/1";

/// Input that is not well-formed for the expected schema.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adds the schema tag to an object.
json tagged(json j);

json error_json(const std::string& kind, const std::string& message);

json fence_to_json(const PlabicFence& f);

json qp_to_json(const QP& qp);
/// Arrows keep their optional numeric "key"; otherwise ids follow listed order.
/// Throws FormatError.
QP qp_from_json(const json& j);

json potential_to_json(const Quiver& q, const Potential& w);
json words_to_json(const Quiver& q, const std::vector<Word>& words);

json log_to_json(const QP& input, const MutationLog& log);
json trace_report_to_json(const QP& qp, const TraceReport& r);
json certificate_to_json(const PlabicFence& f, const RigidityCertificate& c);
json graph_to_json(const ExchangeGraph& g, bool with_qps = true);
json certificate_log_to_json(const QP& qp, const CertificateLog& log);
json probe_to_json(const QP& qp, const ProbeVerdict& v);

/// Exact vertex name, or "F2"/"G1"-style shorthand for face "L1#2"/"L2#1".
std::optional<VertexId> resolve_vertex(const Quiver& q, const std::string& token);
/// Comma or space separated vertex tokens. Throws FormatError.
std::vector<VertexId> parse_vertex_word(const Quiver& q, const std::string& text);

Rational rational_from_json(const json& j);
std::complex<double> complex_from_json(const json& j);

template <class T>
json matrix_to_json(const Matrix<T>& m);
template <>
json matrix_to_json(const Matrix<Rational>& m);
template <>
json matrix_to_json(const Matrix<std::complex<double>>& m);
template <>
json matrix_to_json(const Matrix<int>& m);

}  // namespace qpseed::io

namespace qpseed::io {

/// Stable error kind for an exception raised by the library.
std::string error_kind(const std::exception& e);
/// True for errors in the shape of the input rather than its mathematics.
bool is_malformed(const std::exception& e);

}  // namespace qpseed::io
