#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "jacred/attrlab.hpp"
#include "jacred/corpus.hpp"
#include "jacred/error.hpp"
#include "jacred/gzpair.hpp"
#include "jacred/reducer.hpp"
#include "jacred/serialize.hpp"

using namespace jacred;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

/// Bad command-line input (missing file, unknown id, malformed input file).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  bool timings = false;
  std::uint64_t seed = 1;
  Budget budget;
};

struct Input {
  std::string name;
  MapDocument doc;
  PolyMap map;
  std::optional<ExampleEntry> entry;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

/// A path when it exists, otherwise a built-in example id.
Input load_input(const std::string& arg, bool square = true) {
  Input in;
  in.name = arg;
  if (std::filesystem::exists(arg)) {
    try {
      in.doc = parse_map(read_file(arg));
    } catch (const ParseError& e) {
      throw UsageError(arg + ": " + e.what());
    }
  } else {
    const auto ids = builtin_ids();
    if (std::find(ids.begin(), ids.end(), arg) == ids.end()) {
      throw UsageError("'" + arg + "' is neither a file nor a built-in example id");
    }
    in.entry = builtin_example(arg);
    in.doc = in.entry->document;
  }
  in.map = PolyMap(in.doc.vars.size(), in.doc.polys());
  if (square && !in.map.is_square()) {
    throw DomainError(arg + ": expected a square map, got " + std::to_string(in.map.size()) + " components in " +
                      std::to_string(in.map.varcount()) + " variables");
  }
  return in;
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const Globals& g, const Json& report, const std::string& text) {
  if (g.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

unsigned deg(const PolyMap& f) { return f.degree().is_minus_infinity() ? 0 : f.degree().value(); }
unsigned deg(const Poly& p) { return p.degree().is_minus_infinity() ? 0 : p.degree().value(); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json shape_json(const ShapeCheck& s) { return {{"ok", s.ok}, {"witness", s.witness}}; }

/// J(H) nilpotency: exact when the budget allows, sampled otherwise.
NilpotencyCheck nilpotency(const PolyMap& f, const Globals& g) {
  if (f.varcount() <= g.budget.exact_nilpotent_dim) return is_nilpotent(jacobian(nonlinear_part(f)), g.budget, g.seed);
  return nonlinear_jacobian_nilpotent_sampled(f, g.seed);
}

struct KellerVerdict {
  Tri keller = Tri::unknown;
  bool exact = false;
  std::optional<NonconstancyWitness> witness;
};

/// Exact j(F) when within budget, otherwise two points with different j.
KellerVerdict keller_verdict(const PolyMap& f, const Globals& g) {
  KellerVerdict v;
  auto det = jacobian_det(f, g.budget);
  if (det.value) {
    v.exact = true;
    v.keller = det.value->is_constant() && !det.value->is_zero() ? Tri::yes : Tri::no;
    return v;
  }
  v.witness = jacobian_nonconstant_witness(f, g.seed);
  if (v.witness) v.keller = Tri::no;
  return v;
}

Json keller_json(const KellerVerdict& v) {
  Json w = nullptr;
  if (v.witness) {
    auto pt = [&](const std::vector<Rational>& p) {
      Json a = Json::array();
      for (const auto& x : p) a.push_back(to_string(x));
      return a;
    };
    w = {{"p", pt(v.witness->p)},
         {"q", pt(v.witness->q)},
         {"prime", v.witness->prime},
         {"det_p_mod", v.witness->det_p_mod},
         {"det_q_mod", v.witness->det_q_mod}};
  }
  return {{"keller", to_string(v.keller)}, {"exact", v.exact}, {"nonconstancy_witness", std::move(w)}};
}

std::vector<std::string> names_for(const Input& in, std::size_t n) { return extend_var_names(in.doc.vars, n); }

/// Writes the map (to --out or into the report) and the certificate (--cert).
void write_outputs(const Input& in, const PolyMap& out, const Certificate* cert, const std::string& out_path,
                   const std::string& cert_path, Json& report, std::string& text) {
  const auto names = names_for(in, out.varcount());
  const std::string mtext = map_text(out, names);
  if (!out_path.empty()) {
    write_file(out_path, mtext);
    report["out"] = out_path;
    text += "map written to " + out_path + "\n";
  } else {
    report["map"] = mtext;
    text += mtext;
  }
  if (cert && !cert_path.empty()) {
    write_file(cert_path, certificate_to_json(*cert, in.doc.vars).dump(1) + "\n");
    report["cert"] = cert_path;
    text += "certificate written to " + cert_path + "\n";
  }
}

Json certificate_summary(const Certificate& c, const CertificateVerdict& v) {
  return {{"moves", c.moves.size()},
          {"source_dim", c.source.varcount()},
          {"target_dim", c.target.varcount()},
          {"verdict", to_json(v)}};
}

// ---- commands ----

int cmd_analyze(const Globals& g, const std::string& file, std::size_t samples) {
  auto in = load_input(file);
  const PolyMap& f = in.map;
  const auto n = f.varcount();
  const auto names = names_for(in, n);
  auto cls = classify(f, g.seed, samples, g.budget);
  auto yag = is_yagzhev(f);
  auto dru = is_druzkowski(f);
  Json report{{"command", "analyze"},
              {"input", in.name},
              {"dimension", n},
              {"degree", deg(f)},
              {"seed", g.seed},
              {"classification", to_json(cls, names)},
              {"yagzhev", shape_json(yag)},
              {"druzkowski", shape_json(dru.shape)}};
  std::ostringstream t;
  t << "input: " << in.name << "\ndimension: " << n << "\ndegree: " << deg(f)
    << "\nnondegenerate: " << yes_no(cls.nondegenerate) << " (" << cls.nondegenerate_method << ")"
    << "\nkeller: " << to_string(cls.keller) << "\nnonsingular (sampled, " << cls.nonsingular_sampled.samples
    << " points): " << (cls.nonsingular_sampled.pass ? "pass" : "fail")
    << (cls.nonsingular_sampled.one_sign ? ", one sign" : ", mixed signs") << "\nyagzhev: " << yes_no(yag.ok)
    << "\ndruzkowski: " << yes_no(dru.shape.ok) << "\n";
  report["nilpotent"] = nullptr;
  if (yag.ok) {
    auto nil = nilpotency(f, g);
    report["nilpotent"] = to_json(nil);
    t << "J(H) nilpotent: " << to_string(nil.nilpotent) << (nil.exact ? " (exact)" : " (sampled)") << "\n";
  }
  report["dex"] = nullptr;
  report["minimal_polynomials"] = nullptr;
  if (n == 2 && cls.nondegenerate) {
    auto d = dex2(f, g.seed);
    report["dex"] = {{"value", d.value}, {"retries", d.retries}, {"rotation_attempts", d.rotation_attempts}};
    t << "dex: " << d.value << "\n";
    const auto d1 = deg(f[0]), d2 = deg(f[1]);
    if (d1 * d2 <= 64) {
      const std::vector<std::string> ring{names[0], names[1], "Y1", "Y2"};
      Json mp = Json::array();
      for (std::size_t k = 0; k < 2; ++k) {
        auto m = minimal_poly_coordinate(f, k);
        mp.push_back({{"coordinate", names[k]},
                      {"degree", m.degree},
                      {"degenerate_power", m.degenerate_power},
                      {"polynomial", print_poly(m.stripped, ring)}});
        t << "minimal polynomial of " << names[k] << ": " << print_poly(m.stripped, ring) << "\n";
      }
      report["minimal_polynomials"] = std::move(mp);
    }
  }
  report["expected"] = in.entry ? to_json(in.entry->expected) : Json(nullptr);
  emit(g, report, t.str());
  return kOk;
}

int cmd_attributes(const Globals& g, const std::string& file, std::size_t samples) {
  auto in = load_input(file);
  auto rep = mfs_sample(in.map, g.seed, samples);
  if (in.entry && in.entry->expected.sag_external) rep.sag_external = *in.entry->expected.sag_external;
  auto cls = classify(in.map, g.seed, 100, g.budget);
  Json report{{"command", "attributes"},
              {"input", in.name},
              {"attributes", to_json(rep)},
              {"classification", {{"nondegenerate", cls.nondegenerate}, {"keller", to_string(cls.keller)}}},
              {"expected", in.entry ? to_json(in.entry->expected) : Json(nullptr)}};
  std::ostringstream t;
  t << "input: " << in.name << "\ndex: " << *rep.dex << "\nmfs_observed: " << rep.mfs_observed
    << " (observed maximum over " << rep.samples << " fibers)\nparity_consistent: " << yes_no(rep.parity_consistent)
    << "\nhistogram:";
  for (const auto& [k, v] : rep.real_count_histogram) t << " " << k << ":" << v;
  t << "\ngenericity_retries: " << rep.genericity_retries << "\nseed: " << rep.seed << "\n";
  if (rep.sag_external) t << "sag (external, not computed): " << *rep.sag_external << "\n";
  emit(g, report, t.str());
  return kOk;
}

int cmd_reduce(const Globals& g, const std::string& file, const std::string& to, bool grouping,
               const std::string& out_path, const std::string& cert_path, std::size_t fiber_samples) {
  auto in = load_input(file);
  ReduceOptions opts{g.budget, grouping};
  Reduction r = to == "cubic" ? to_cubic(in.map, opts) : to_yagzhev(in.map, g.seed, opts);
  const PolyMap& h = r.map;
  const auto& cert = r.trace.certificate;
  auto verdict = verify_certificate(cert);
  const auto names = names_for(in, h.varcount());
  Json report{{"command", "reduce"}, {"input", in.name}, {"to", to}, {"seed", g.seed}};
  report["trace"] = to_json(r.trace, g.timings);
  Json output{{"dimension", h.varcount()}, {"degree", deg(h)}};
  std::ostringstream t;
  t << "input: " << in.name << " (dimension " << in.map.varcount() << ", degree " << deg(in.map)
    << ")\n";
  for (const auto& s : r.trace.stages) {
    t << s.name << ": " << s.dim_in << " -> " << s.dim_out << " (" << s.moves << " moves)\n";
  }
  t << "output: dimension " << h.varcount() << ", degree " << deg(h) << "\n";
  bool ok = verdict.valid;
  if (to == "yagzhev") {
    auto yag = is_yagzhev(h);
    ok = ok && yag.ok;
    auto kv = keller_verdict(h, g);
    auto nil = nilpotency(h, g);
    output["yagzhev"] = shape_json(yag);
    output["keller"] = keller_json(kv);
    output["nilpotent"] = to_json(nil);
    t << "yagzhev: " << yes_no(yag.ok) << "\nkeller: " << to_string(kv.keller)
      << (kv.exact ? " (exact)" : kv.witness ? " (two-point witness)" : "") << "\nJ(H) nilpotent: "
      << to_string(nil.nilpotent) << (nil.exact ? " (exact)" : " (sampled)") << "\n";
  } else {
    ok = ok && deg(h) <= 3;
  }
  report["output"] = std::move(output);
  report["certificate"] = certificate_summary(cert, verdict);
  t << "certificate: " << cert.moves.size() << " moves, " << (verdict.valid ? "verified" : "INVALID: " + verdict.reason)
    << "\n";
  if (fiber_samples > 0) {
    auto ft = fiber_transport_check(cert, g.seed, fiber_samples);
    ok = ok && ft.ok();
    report["fiber_transport"] = to_json(ft);
    t << "fiber transport: " << ft.matches << "/" << ft.requested << " exact matches\n";
  }
  if (in.entry && in.entry->expected.reference_yagzhev_dim) {
    report["reference_dims"] = {{"cubic", *in.entry->expected.reference_cubic_dim},
                                {"yagzhev", *in.entry->expected.reference_yagzhev_dim}};
    t << "reference dimensions (published, for comparison): cubic " << *in.entry->expected.reference_cubic_dim
      << ", yagzhev " << *in.entry->expected.reference_yagzhev_dim << "\n";
  }
  std::string extra;
  write_outputs(in, h, &cert, out_path, cert_path, report, extra);
  if (!out_path.empty() || !g.json) t << extra;
  report["ok"] = ok;
  emit(g, report, t.str());
  return ok ? kOk : kFailed;
}

int report_pairing(const Globals& g, const Input& in, const GZPairing& p, const std::string& command,
                   const std::string& out_path, const std::string& cert_path, const std::string& matrix_out) {
  auto pv = verify_pairing(p);
  auto cert = pairing_to_equivalence(p);
  auto cv = verify_certificate(cert);
  const bool down = command == "pair-down";
  const auto g_names = down ? default_var_names(p.G.varcount()) : in.doc.vars;
  Json report{{"command", command}, {"input", in.name}, {"pairing", to_json(p, g_names)}};
  report["axioms"] = {{"valid", pv.valid}, {"failed_axiom", pv.failed_axiom}, {"reason", pv.reason}};
  report["certificate"] = certificate_summary(cert, cv);
  std::ostringstream t;
  t << "input: " << in.name << "\nm = " << p.G.varcount() << ", n = " << p.F.varcount() << "\naxioms: "
    << (pv.valid ? "all hold" : "axiom " + std::to_string(pv.failed_axiom) + " fails: " + pv.reason)
    << "\ncertificate (G to F): " << cert.moves.size() << " moves, " << (cv.valid ? "verified" : "INVALID") << "\n";
  if (!matrix_out.empty()) {
    write_file(matrix_out, print_matrix(p.A));
    report["matrix_out"] = matrix_out;
  } else if (!g.json) {
    t << "A =\n" << print_matrix(p.A);
  }
  std::string extra;
  const PolyMap& produced = down ? p.G : p.F;
  Input named = in;
  if (down) named.doc.vars = default_var_names(p.G.varcount());
  write_outputs(named, produced, nullptr, out_path, "", report, extra);
  if (!cert_path.empty()) {
    write_file(cert_path, certificate_to_json(cert, g_names).dump(1) + "\n");
    report["cert"] = cert_path;
    extra += "certificate written to " + cert_path + "\n";
  }
  t << extra;
  const bool ok = pv.valid && cv.valid;
  report["ok"] = ok;
  emit(g, report, t.str());
  return ok ? kOk : kFailed;
}

int cmd_pair_up(const Globals& g, const std::string& file, const std::string& out_path, const std::string& cert_path,
                const std::string& matrix_out) {
  auto in = load_input(file);
  return report_pairing(g, in, pair_up(in.map), "pair-up", out_path, cert_path, matrix_out);
}

int cmd_pair_down(const Globals& g, const std::string& file, const std::string& matrix_path,
                  const std::string& out_path, const std::string& cert_path) {
  auto in = load_input(file);
  RatMatrix a;
  try {
    a = parse_matrix(read_file(matrix_path));
  } catch (const DomainError& e) {
    throw UsageError(matrix_path + ": " + e.what());
  }
  return report_pairing(g, in, pair_down(in.map, a), "pair-down", out_path, cert_path, "");
}

int cmd_symmetrize(const Globals& g, const std::string& file, const std::string& out_path,
                   const std::string& cert_path) {
  auto in = load_input(file);
  const PolyMap& f = in.map;
  const auto n = f.varcount();
  auto m = meng_symmetrize(f, g.seed, g.budget);
  auto names = extend_var_names(in.doc.vars, 2 * n, "v");
  // variables x first, then v; F is evaluated at v
  std::vector<std::string> gnames(names.begin(), names.end());
  auto jg = jacobian(m.map);
  const bool symmetric = jg == jg.transpose();
  auto cv = verify_certificate(m.certificate);
  Json report{{"command", "symmetrize"}, {"input", in.name}, {"dimension", 2 * n}};
  report["potential"] = print_poly(m.potential, std::span<const std::string>(gnames).first(2 * n));
  report["symmetric_jacobian"] = symmetric;
  report["shear_denominator_status"] = to_string(m.status);
  // j(G) = (-1)^n j(F)(v)^2 and Keller transfer, exactly when within budget
  Json det = {{"identity", "unknown"}, {"keller_input", "unknown"}, {"keller_output", "unknown"}};
  Budget b = g.budget;
  auto jf = jacobian_det(f, b);
  auto jgd = jacobian_det(m.map, b);
  bool ok = symmetric && cv.valid;
  if (jf.value && jgd.value) {
    std::vector<Poly> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Poly::variable(n + i, 2 * n));
    Poly jfv = substitute(*jf.value, v);
    Poly rhs = (n % 2 ? Rational(-1) : Rational(1)) * jfv * jfv;
    const bool id = *jgd.value == rhs;
    const bool kf = jf.value->is_constant() && !jf.value->is_zero();
    const bool kg = jgd.value->is_constant() && !jgd.value->is_zero();
    det = {{"identity", id ? "yes" : "no"}, {"keller_input", kf ? "yes" : "no"}, {"keller_output", kg ? "yes" : "no"}};
    ok = ok && id && kf == kg;
  }
  report["determinant"] = det;
  report["certificate"] = certificate_summary(m.certificate, cv);
  std::ostringstream t;
  t << "input: " << in.name << "\noutput dimension: " << 2 * n << "\nJ(G) symmetric: " << yes_no(symmetric)
    << "\nj(G) = (-1)^n j(F)(v)^2: " << det["identity"].get<std::string>()
    << "\nkeller(F): " << det["keller_input"].get<std::string>()
    << ", keller(G): " << det["keller_output"].get<std::string>() << "\nshear inverse denominator: "
    << to_string(m.status) << "\ncertificate: " << (cv.valid ? "verified" : "INVALID") << "\n";
  Input named = in;
  named.doc.vars = gnames;
  std::string extra;
  write_outputs(named, m.map, &m.certificate, out_path, cert_path, report, extra);
  t << extra;
  report["ok"] = ok;
  emit(g, report, t.str());
  return ok ? kOk : kFailed;
}

int cmd_segre(const Globals& g, const std::string& file, const std::string& out_path, const std::string& cert_path) {
  auto in = load_input(file);
  const PolyMap& f = in.map;
  const auto n = f.varcount();
  CertificateBuilder b(f);
  std::vector<Rational> origin(n);
  const auto f0 = f.eval(origin);
  bool translated = false;
  for (const auto& c : f0) translated = translated || c != 0;
  if (translated) {
    std::vector<Rational> neg;
    for (const auto& c : f0) neg.push_back(-c);
    b.post({RationalMap::translation(neg), RationalMap::translation(f0), AutVerification::exact_identity,
            "translate F(0) to 0"});
  }
  const PolyMap base = b.current();
  b.segre();
  auto cert = b.finish();
  const PolyMap& s = cert.target;
  auto cv = verify_certificate(cert);
  // j(G)(x, t) = j(F)(t x)
  std::string identity = "unknown";
  auto jf = jacobian_det(base, g.budget);
  auto jg = jacobian_det(s, g.budget);
  if (jf.value && jg.value) {
    std::vector<Poly> tx;
    const Poly tvar = Poly::variable(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) tx.push_back(tvar * Poly::variable(i, n + 1));
    identity = substitute(*jf.value, tx) == *jg.value ? "yes" : "no";
  }
  const bool ok = cv.valid && identity != "no";
  auto names = extend_var_names(in.doc.vars, n + 1, "t");
  Json report{{"command", "segre"},
              {"input", in.name},
              {"translated", translated},
              {"dimension", n + 1},
              {"determinant_identity", identity},
              {"certificate", certificate_summary(cert, cv)}};
  std::ostringstream t;
  t << "input: " << in.name << "\n" << (translated ? "F(0) moved to the origin first\n" : "")
    << "j(G)(x, t) = j(F)(t x): " << identity << "\ncertificate: " << (cv.valid ? "verified" : "INVALID") << "\n";
  Input named = in;
  named.doc.vars = names;
  std::string extra;
  write_outputs(named, s, &cert, out_path, cert_path, report, extra);
  t << extra;
  report["ok"] = ok;
  emit(g, report, t.str());
  return ok ? kOk : kFailed;
}

int cmd_verify_cert(const Globals& g, const std::string& file, std::size_t fiber_samples) {
  Certificate c = certificate_from_json(load_json(file));
  auto v = verify_certificate(c);
  Json report{{"command", "verify-cert"}, {"input", file}, {"certificate", certificate_summary(c, v)}};
  std::ostringstream t;
  t << "certificate: " << c.moves.size() << " moves, dimension " << c.source.varcount() << " -> "
    << c.target.varcount() << "\nverdict: " << (v.valid ? "valid" : "INVALID") << "\n";
  if (!v.valid) {
    t << "failing move: " << (v.failing_move ? std::to_string(*v.failing_move + 1) : "-") << "\nreason: " << v.reason
      << "\n";
  } else {
    t << "weakest denominator status: " << to_string(v.weakest) << "\n";
  }
  bool ok = v.valid;
  report["fiber_transport"] = nullptr;
  if (v.valid && fiber_samples > 0) {
    auto ft = fiber_transport_check(c, g.seed, fiber_samples);
    report["fiber_transport"] = to_json(ft);
    ok = ft.ok();
    t << "fiber transport: " << ft.matches << "/" << ft.requested << " exact matches\n";
  }
  report["ok"] = ok;
  emit(g, report, t.str());
  return ok ? kOk : kFailed;
}

int cmd_examples_list(const Globals& g) {
  Json list = Json::array();
  std::ostringstream t;
  for (const auto& id : builtin_ids()) {
    auto e = builtin_example(id);
    list.push_back({{"id", id},
                    {"description", e.description},
                    {"dimension", e.document.vars.size()},
                    {"expected", to_json(e.expected)}});
    t << id << "  " << e.description << "\n";
  }
  emit(g, {{"command", "examples list"}, {"examples", list}}, t.str());
  return kOk;
}

int cmd_examples_show(const Globals& g, const std::string& id) {
  const auto ids = builtin_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown example id '" + id + "'");
  auto e = builtin_example(id);
  const auto text = print_map(e.document);
  emit(g,
       {{"command", "examples show"},
        {"id", id},
        {"description", e.description},
        {"map", text},
        {"expected", to_json(e.expected)}},
       text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reductions and attributes of polynomial maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  bool grouping_off = false;
  app.add_option("--budget-dim", g.budget.max_dim, "dimension cap for reductions")->capture_default_str();
  app.add_option("--budget-ms", g.budget.max_ms, "wall-clock budget in milliseconds")->capture_default_str();
  app.add_option("--exact-threshold", g.budget.exact_det_dim, "largest dimension for exact symbolic determinants")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
  app.add_flag("--json", g.json, "print a JSON report");
  app.add_flag("--timings", g.timings, "include wall-clock timings in JSON reports");

  std::string file, out_path, cert_path, to = "yagzhev", matrix_path, matrix_out, example_id;
  std::size_t samples = 1000, attr_samples = 200, fiber_samples = 20, reduce_fiber = 0;

  auto* analyze = app.add_subcommand("analyze", "classification, shape checks and plane attributes");
  analyze->add_option("file", file, "map file or built-in example id")->required();
  analyze->add_option("--samples", samples, "sample points for nonsingularity")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "stable equivalence to a cubic or Yagzhev map");
  reduce->add_option("file", file, "map file or built-in example id")->required();
  reduce->add_option("--to", to, "cubic or yagzhev")->check(CLI::IsMember({"cubic", "yagzhev"}))->capture_default_str();
  reduce->add_option("--out", out_path, "write the output map here");
  reduce->add_option("--cert", cert_path, "write the certificate here");
  reduce->add_option("--fiber-samples", reduce_fiber, "fiber transport samples on the certificate")
      ->capture_default_str();
  reduce->add_flag("--no-grouping", grouping_off, "split single terms in the degree-lowering step");

  auto* pair_up_cmd = app.add_subcommand("pair-up", "cubic linear partner of a cubic homogeneous map");
  pair_up_cmd->add_option("file", file, "map file or built-in example id")->required();
  pair_up_cmd->add_option("--out", out_path, "write the partner map here");
  pair_up_cmd->add_option("--cert", cert_path, "write the certificate here");
  pair_up_cmd->add_option("--matrix-out", matrix_out, "write the matrix A here");

  auto* pair_down_cmd = app.add_subcommand("pair-down", "cubic homogeneous partner of X + (AX)^3");
  pair_down_cmd->add_option("file", file, "map file or built-in example id")->required();
  pair_down_cmd->add_option("--matrix", matrix_path, "matrix A, one row per line")->required();
  pair_down_cmd->add_option("--out", out_path, "write the partner map here");
  pair_down_cmd->add_option("--cert", cert_path, "write the certificate here");

  auto* sym = app.add_subcommand("symmetrize", "symmetric Jacobian map G = grad(x . F(v))");
  sym->add_option("file", file, "map file or built-in example id")->required();
  sym->add_option("--out", out_path, "write the output map here");
  sym->add_option("--cert", cert_path, "write the certificate here");

  auto* segre = app.add_subcommand("segre", "Segre extension (F(tx)/t, t)");
  segre->add_option("file", file, "map file or built-in example id")->required();
  segre->add_option("--out", out_path, "write the output map here");
  segre->add_option("--cert", cert_path, "write the certificate here");

  auto* verify = app.add_subcommand("verify-cert", "replay and check a certificate");
  verify->add_option("file", file, "certificate JSON")->required();
  verify->add_option("--fiber-samples", fiber_samples, "fiber transport samples (0 to skip)")->capture_default_str();

  auto* attrs = app.add_subcommand("attributes", "dex and sampled real fiber sizes of a plane map");
  attrs->add_option("file", file, "map file or built-in example id")->required();
  attrs->add_option("--samples", attr_samples, "number of fibers")->capture_default_str();

  auto* examples = app.add_subcommand("examples", "built-in examples");
  examples->require_subcommand(1);
  auto* ex_list = examples->add_subcommand("list", "list example ids");
  auto* ex_show = examples->add_subcommand("show", "print an example map");
  ex_show->add_option("id", example_id, "example id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(g, file, samples);
    if (*reduce) return cmd_reduce(g, file, to, !grouping_off, out_path, cert_path, reduce_fiber);
    if (*pair_up_cmd) return cmd_pair_up(g, file, out_path, cert_path, matrix_out);
    if (*pair_down_cmd) return cmd_pair_down(g, file, matrix_path, out_path, cert_path);
    if (*sym) return cmd_symmetrize(g, file, out_path, cert_path);
    if (*segre) return cmd_segre(g, file, out_path, cert_path);
    if (*verify) return cmd_verify_cert(g, file, fiber_samples);
    if (*attrs) return cmd_attributes(g, file, attr_samples);
    if (*ex_list) return cmd_examples_list(g);
    if (*ex_show) return cmd_examples_show(g, example_id);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
