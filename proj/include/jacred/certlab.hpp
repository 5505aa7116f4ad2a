#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacred/polymap.hpp"

namespace jacred {

/// How well the nonvanishing of a rational map's denominator is established.
/// Ordered from weakest to strongest.
enum class NowhereZero { assumed = 0, sampled = 1, proven_constant = 2 };
const char* to_string(NowhereZero s);
NowhereZero nowhere_zero_from_string(std::string_view s);

/// Self-map of an n-dimensional space given by component_i = numerator_i /
/// denominator. Components not listed in `changed` are the coordinate x_i
/// itself (not divided by the denominator); the automorphisms built by the
/// reducer touch a handful of coordinates in spaces of hundreds.
class RationalMap {
 public:
  RationalMap() = default;
  /// Polynomial map from changed components; the denominator is 1.
  RationalMap(std::size_t dim, std::vector<std::pair<std::size_t, Poly>> changed);
  RationalMap(std::size_t dim, std::vector<std::pair<std::size_t, Poly>> changed, Poly denominator,
              NowhereZero status);
  static RationalMap from_polymap(const PolyMap& f);
  static RationalMap identity(std::size_t n) { return RationalMap(n, {}); }
  /// x -> M x.
  static RationalMap linear(const RatMatrix& m);
  /// x -> x + v.
  static RationalMap translation(std::span<const Rational> v);

  std::size_t dim() const { return dim_; }
  std::span<const std::pair<std::size_t, Poly>> changed() const { return changed_; }
  const Poly& denominator() const { return den_; }
  NowhereZero status() const { return status_; }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Numerator of component i (x_i * denominator when unchanged).
  Poly numerator(std::size_t i) const;
  /// Component i as a polynomial; throws DomainError for rational maps.
  Poly component(std::size_t i) const;
  PolyMap to_polymap() const;
  bool is_linear() const;

  /// Point image; nullopt when the denominator vanishes there.
  std::optional<std::vector<Rational>> eval(std::span<const Rational> point) const;

  friend bool operator==(const RationalMap&, const RationalMap&) = default;

 private:
  void normalize();
  std::size_t dim_ = 0;
  std::vector<std::pair<std::size_t, Poly>> changed_;  // sorted by index
  Poly den_;
  NowhereZero status_ = NowhereZero::proven_constant;
};

enum class AutVerification { exact_identity, fraction_field_identity };
const char* to_string(AutVerification v);

/// forward o inverse = id = inverse o forward.
struct Automorphism {
  RationalMap forward;
  RationalMap inverse;
  AutVerification verification = AutVerification::exact_identity;
  std::string label;

  std::size_t dim() const { return forward.dim(); }
  /// Weakest denominator status of the two directions.
  NowhereZero status() const;
  Automorphism inverted() const;
};

/// Checks both composition identities symbolically (clearing denominators
/// when rational). Returns an empty string on success, otherwise the reason.
std::string verify_automorphism(const Automorphism& a);

/// Whether outer o inner is the identity, as an exact identity of rational
/// functions. On failure `why` names the first offending component.
bool composes_to_identity(const RationalMap& outer, const RationalMap& inner, std::string* why = nullptr);

/// p o m for a polynomial p; throws DomainError when the result is not a
/// polynomial.
Poly substitute_rational(const Poly& p, const RationalMap& m);

enum class MoveKind { extend, post_compose, pre_compose, segre };
const char* to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::extend;
  std::size_t count = 0;                          ///< fresh variables (extend)
  std::shared_ptr<const Automorphism> automorphism;  ///< post/pre compositions
  std::size_t before_dim = 0;
  std::size_t after_dim = 0;

  static Move extend(std::size_t before, std::size_t count);
  static Move post(Automorphism a);
  static Move pre(Automorphism a);
  static Move segre(std::size_t before);
};

/// Applies a single move. PreCompose with a rational automorphism is allowed
/// only when every component clears its denominator exactly.
PolyMap apply_move(const PolyMap& f, const Move& m);

/// G(x, t) = (F(t x) / t, t) for F(0) = 0; t is appended last.
PolyMap segre_extend(const PolyMap& f);

struct Certificate {
  PolyMap source;
  PolyMap target;
  std::vector<Move> moves;
  /// intermediates[k] is the map after moves[k]; the last equals target.
  std::vector<PolyMap> intermediates;
};

/// Builds a certificate move by move, recording every intermediate map.
class CertificateBuilder {
 public:
  explicit CertificateBuilder(PolyMap source);
  const PolyMap& current() const { return current_; }
  CertificateBuilder& extend(std::size_t count);
  CertificateBuilder& post(Automorphism a);
  CertificateBuilder& pre(Automorphism a);
  CertificateBuilder& segre();
  /// Appends a certificate whose source is the current map.
  CertificateBuilder& append(const Certificate& c);
  Certificate finish() const;

 private:
  CertificateBuilder& push(Move m);
  Certificate cert_;
  PolyMap current_;
};

struct CertificateVerdict {
  bool valid = false;
  std::optional<std::size_t> failing_move;  ///< 0-based
  std::string reason;
  NowhereZero weakest = NowhereZero::proven_constant;
  std::size_t moves_checked = 0;
};

/// Replays every move, requires exact equality with the recorded
/// intermediate, and verifies each automorphism's two-sided inverse.
CertificateVerdict verify_certificate(const Certificate& c);

struct FiberTransportReport {
  std::size_t requested = 0;
  std::size_t checked = 0;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t resampled = 0;  ///< samples redrawn after a vanishing denominator
  std::uint64_t seed = 0;
  std::optional<std::size_t> first_mismatch;
  bool ok() const { return mismatches == 0 && checked == requested; }
};

/// Pushes seeded source points x and their images F(x) through the
/// point correspondence of every move and checks target(x') == y' exactly.
FiberTransportReport fiber_transport_check(const Certificate& c, std::uint64_t seed, std::size_t samples);

}  // namespace jacred
