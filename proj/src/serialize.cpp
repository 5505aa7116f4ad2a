#include "jacred/serialize.hpp"

#include <sstream>

#include "jacred/error.hpp"

namespace jacred {

namespace {

constexpr const char* kCertificateFormat = "jacred-certificate";
constexpr int kCertificateVersion = 1;

std::span<const std::string> prefix(std::span<const std::string> names, std::size_t n) {
  if (names.size() < n) throw DomainError("not enough variable names for dimension " + std::to_string(n));
  return names.first(n);
}

Json rational(const Rational& q) { return to_string(q); }

Json optional_size(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json point(std::span<const Rational> p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(rational(x));
  return out;
}

AutVerification verification_from_string(const std::string& s) {
  if (s == "exact-identity") return AutVerification::exact_identity;
  if (s == "fraction-field-identity") return AutVerification::fraction_field_identity;
  throw DomainError("unknown verification kind '" + s + "'");
}

MoveKind move_kind_from_string(const std::string& s) {
  for (auto k : {MoveKind::extend, MoveKind::post_compose, MoveKind::pre_compose, MoveKind::segre}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown move kind '" + s + "'");
}

Json rational_map_json(const RationalMap& m, std::span<const std::string> names) {
  auto vars = prefix(names, m.dim());
  Json changed = Json::array();
  for (const auto& [i, p] : m.changed()) changed.push_back({{"index", i}, {"numerator", print_poly(p, vars)}});
  return {{"denominator", print_poly(m.denominator(), vars)},
          {"status", to_string(m.status())},
          {"changed", std::move(changed)}};
}

RationalMap rational_map_from_json(const Json& j, std::size_t dim, std::span<const std::string> names) {
  auto vars = prefix(names, dim);
  std::vector<std::pair<std::size_t, Poly>> changed;
  for (const auto& e : j.at("changed")) {
    const auto i = e.at("index").get<std::size_t>();
    changed.emplace_back(i, parse_poly(e.at("numerator").get<std::string>(), vars));
  }
  return RationalMap(dim, std::move(changed), parse_poly(j.at("denominator").get<std::string>(), vars),
                     nowhere_zero_from_string(j.at("status").get<std::string>()));
}

Json move_json(const Move& m, std::span<const std::string> names) {
  Json out{{"kind", to_string(m.kind)}, {"before_dim", m.before_dim}, {"after_dim", m.after_dim}};
  if (m.kind == MoveKind::extend) out["count"] = m.count;
  if (m.automorphism) {
    const auto& a = *m.automorphism;
    out["label"] = a.label;
    out["verification"] = to_string(a.verification);
    out["forward"] = rational_map_json(a.forward, names);
    out["inverse"] = rational_map_json(a.inverse, names);
  }
  return out;
}

Move move_from_json(const Json& j, std::span<const std::string> names) {
  const auto kind = move_kind_from_string(j.at("kind").get<std::string>());
  const auto before = j.at("before_dim").get<std::size_t>();
  const auto after = j.at("after_dim").get<std::size_t>();
  Move m;
  switch (kind) {
    case MoveKind::extend:
      m = Move::extend(before, j.at("count").get<std::size_t>());
      break;
    case MoveKind::segre:
      m = Move::segre(before);
      break;
    case MoveKind::post_compose:
    case MoveKind::pre_compose: {
      if (before != after) throw DomainError("composition move changes the dimension");
      Automorphism a{rational_map_from_json(j.at("forward"), before, names),
                     rational_map_from_json(j.at("inverse"), before, names),
                     verification_from_string(j.at("verification").get<std::string>()),
                     j.value("label", std::string())};
      m = kind == MoveKind::post_compose ? Move::post(std::move(a)) : Move::pre(std::move(a));
      break;
    }
  }
  if (m.before_dim != before || m.after_dim != after) throw DomainError("move dimensions are inconsistent");
  return m;
}

}  // namespace

std::string map_text(const PolyMap& f, std::span<const std::string> names) {
  std::vector<std::string> vars(names.begin(), names.end());
  vars = extend_var_names(std::move(vars), f.varcount());
  vars.resize(f.varcount());
  return print_map(make_document(std::move(vars), f.components()));
}

PolyMap map_from_text(std::string_view text, bool square) {
  auto doc = parse_map(text);
  PolyMap f(doc.vars.size(), doc.polys());
  if (square && !f.is_square()) {
    throw DomainError("expected a square map, got " + std::to_string(f.size()) + " components in " +
                      std::to_string(f.varcount()) + " variables");
  }
  return f;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(point(m.row(i)));
  return rows;
}

RatMatrix matrix_from_json(const Json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    auto& row = rows.emplace_back();
    for (const auto& x : r) row.push_back(parse_rational(x.get<std::string>()));
  }
  return RatMatrix::from_rows(rows);
}

RatMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<Rational> row;
    for (std::string tok; fields >> tok;) row.push_back(parse_rational(tok));
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) throw DomainError("matrix rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("matrix has no rows");
  return RatMatrix::from_rows(rows);
}

std::string print_matrix(const RatMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Json certificate_to_json(const Certificate& c, std::vector<std::string> source_vars) {
  std::size_t dim = std::max(c.source.varcount(), c.target.varcount());
  for (const auto& m : c.moves) dim = std::max(dim, m.after_dim);
  source_vars.resize(std::min(source_vars.size(), c.source.varcount()));
  const auto names = extend_var_names(std::move(source_vars), dim);
  Json moves = Json::array(), inters = Json::array();
  const PolyMap* prev = &c.source;
  for (std::size_t k = 0; k < c.moves.size(); ++k) {
    moves.push_back(move_json(c.moves[k], names));
    const PolyMap& cur = c.intermediates.at(k);
    const auto vars = prefix(names, cur.varcount());
    const PolyMap base = cur.varcount() >= prev->varcount() ? prev->extended(cur.varcount()) : *prev;
    Json changed = Json::array();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (i < base.size() && base.varcount() == cur.varcount() && base[i] == cur[i]) continue;
      changed.push_back({{"index", i}, {"poly", print_poly(cur[i], vars)}});
    }
    inters.push_back({{"dim", cur.varcount()}, {"changed", std::move(changed)}});
    prev = &cur;
  }
  return {{"format", kCertificateFormat},
          {"version", kCertificateVersion},
          {"vars", names},
          {"source", map_text(c.source, names)},
          {"target", map_text(c.target, names)},
          {"moves", std::move(moves)},
          {"intermediates", std::move(inters)}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    if (j.at("format").get<std::string>() != kCertificateFormat) throw DomainError("not a certificate document");
    if (j.at("version").get<int>() != kCertificateVersion) throw DomainError("unsupported certificate version");
    const auto names = j.at("vars").get<std::vector<std::string>>();
    Certificate c;
    c.source = map_from_text(j.at("source").get<std::string>());
    c.target = map_from_text(j.at("target").get<std::string>());
    const auto& moves = j.at("moves");
    const auto& inters = j.at("intermediates");
    if (moves.size() != inters.size()) throw DomainError("moves and intermediates differ in number");
    PolyMap prev = c.source;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      c.moves.push_back(move_from_json(moves[k], names));
      const auto dim = inters[k].at("dim").get<std::size_t>();
      const auto vars = prefix(names, dim);
      std::vector<Poly> comps;
      if (dim >= prev.varcount()) {
        const PolyMap base = prev.extended(dim);
        comps.assign(base.components().begin(), base.components().end());
      } else {
        comps.assign(dim, Poly(dim));
      }
      for (const auto& e : inters[k].at("changed")) {
        const auto i = e.at("index").get<std::size_t>();
        if (i >= dim) throw DomainError("intermediate component index out of range");
        comps[i] = parse_poly(e.at("poly").get<std::string>(), vars);
      }
      prev = PolyMap(dim, std::move(comps));
      c.intermediates.push_back(prev);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed certificate: ") + e.what());
  }
}

Json to_json(const CertificateVerdict& v) {
  return {{"valid", v.valid},
          {"failing_move", optional_size(v.failing_move)},
          {"reason", v.reason},
          {"weakest_status", to_string(v.weakest)},
          {"moves_checked", v.moves_checked}};
}

Json to_json(const FiberTransportReport& r) {
  return {{"ok", r.ok()},
          {"requested", r.requested},
          {"checked", r.checked},
          {"matches", r.matches},
          {"mismatches", r.mismatches},
          {"resampled", r.resampled},
          {"seed", r.seed},
          {"first_mismatch", optional_size(r.first_mismatch)}};
}

Json to_json(const SampledCheck& s) {
  return {{"pass", s.pass},
          {"samples", s.samples},
          {"seed", s.seed},
          {"one_sign", s.one_sign},
          {"sign", s.sign},
          {"zero_at", s.zero_at ? point(*s.zero_at) : Json(nullptr)},
          {"evidence", "sampled"}};
}

Json to_json(const Classification& c, std::span<const std::string> names) {
  Json det = nullptr;
  if (c.jacobian_det) det = print_poly(*c.jacobian_det, prefix(names, c.jacobian_det->varcount()));
  return {{"nondegenerate", c.nondegenerate},
          {"nondegenerate_method", c.nondegenerate_method},
          {"keller", to_string(c.keller)},
          {"nonsingular_sampled", to_json(c.nonsingular_sampled)},
          {"jacobian_degree_bound", c.jacobian_degree_bound},
          {"schwartz_zippel_bound", c.schwartz_zippel_bound},
          {"jacobian_det", std::move(det)}};
}

Json to_json(const NilpotencyCheck& n) {
  return {{"nilpotent", to_string(n.nilpotent)},
          {"exact", n.exact},
          {"witness", n.witness},
          {"witness_point", n.witness_point ? point(*n.witness_point) : Json(nullptr)}};
}

Json to_json(const AttributeReport& r) {
  Json hist = Json::object();
  for (const auto& [k, v] : r.real_count_histogram) hist[std::to_string(k)] = v;
  return {{"dex", optional_size(r.dex)},
          {"mfs_observed", r.mfs_observed},
          {"mfs_kind", "observed maximum (lower bound)"},
          {"samples", r.samples},
          {"seed", r.seed},
          {"parity_consistent", r.parity_consistent},
          {"genericity_retries", r.genericity_retries},
          {"sag_external", optional_size(r.sag_external)},
          {"max_complex", r.max_complex},
          {"image_samples", r.image_samples},
          {"free_samples", r.free_samples},
          {"empty_fibers", r.empty_fibers},
          {"skipped_targets", r.skipped_targets},
          {"real_count_histogram", std::move(hist)}};
}

Json to_json(const ExpectedAttributes& e) {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"dex", opt(e.dex)},
          {"mfs_observed", opt(e.mfs_observed)},
          {"sag_external", opt(e.sag_external)},
          {"keller", opt(e.keller)},
          {"yagzhev", opt(e.yagzhev)},
          {"druzkowski", opt(e.druzkowski)},
          {"reference_cubic_dim", opt(e.reference_cubic_dim)},
          {"reference_yagzhev_dim", opt(e.reference_yagzhev_dim)}};
}

Json to_json(const ReductionTrace& t, bool timings) {
  Json stages = Json::array();
  for (const auto& s : t.stages) {
    Json e{{"name", s.name}, {"dim_in", s.dim_in}, {"dim_out", s.dim_out}, {"moves", s.moves}};
    if (timings) e["ms"] = s.ms;
    stages.push_back(std::move(e));
  }
  Json pots = Json::array();
  for (const auto& [d, c] : t.potentials) pots.push_back({d, c});
  Json out{{"stages", std::move(stages)},
           {"potentials", std::move(pots)},
           {"base_point", point(t.base_point)},
           {"base_point_attempts", t.base_point_attempts},
           {"segre_identity", to_string(t.segre_identity)},
           {"grouping", t.grouping},
           {"moves", t.certificate.moves.size()},
           {"budget",
            {{"max_dim", t.budget.max_dim},
             {"max_ms", t.budget.max_ms},
             {"exact_det_dim", t.budget.exact_det_dim},
             {"exact_nilpotent_dim", t.budget.exact_nilpotent_dim}}}};
  if (timings) out["elapsed_ms"] = t.elapsed_ms;
  return out;
}

Json to_json(const GZPairing& p, std::span<const std::string> g_names) {
  return {{"m", p.G.varcount()},
          {"n", p.F.varcount()},
          {"r", p.r},
          {"A", to_json(p.A)},
          {"B", to_json(p.B)},
          {"C", to_json(p.C)},
          {"G", map_text(p.G, g_names)},
          {"F", map_text(p.F, default_var_names(p.F.varcount()))}};
}

}  // namespace jacred
