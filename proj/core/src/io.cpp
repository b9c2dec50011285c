#include "thinloop/io.hpp"

#include "thinloop/config.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace thinloop {

using nlohmann::json;

namespace {

constexpr const char* kCurveFormat = "thinloop-curve";
constexpr const char* kConnectionFormat = "thinloop-connection";
constexpr int kVersion = 1;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& a, int dim, const char* what) {
  if (!a.is_array() || static_cast<int>(a.size()) != dim)
    throw ValidationError(std::string("curve file: bad point in ") + what);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = a[i].get<double>();
  return v;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
  return j;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

LoadedCurve load_curve_file(const std::string& path) {
  const json j = load_json(path);
  if (j.value("format", "") != kCurveFormat)
    throw ValidationError("'" + path + "': not a " + kCurveFormat + " file");
  if (j.value("version", 0) != kVersion)
    throw ValidationError("'" + path + "': unsupported version");
  const int dim = j.value("dim", 0);
  if (dim <= 0) throw ValidationError("'" + path + "': missing dim");

  LoadedCurve out;
  if (j.contains("samples")) {
    const json& s = j["samples"];
    SampledCurve c;
    c.dim = dim;
    for (const json& p : s.at("points"))
      c.points.push_back(vec_from_json(p, dim, "samples.points"));
    if (s.contains("params"))
      c.params = s["params"].get<std::vector<double>>();
    if (s.contains("tangents")) {
      for (const json& p : s["tangents"])
        c.tangents.push_back(vec_from_json(p, dim, "samples.tangents"));
      c.loop = s.value("loop", false);
      if (c.params.empty()) {
        const int n = static_cast<int>(c.points.size());
        for (int i = 0; i < n; ++i) c.params.push_back(double(i) / (n - 1));
      }
      c.validate();
    } else {
      c = SampledCurve::from_points(std::move(c.points), std::move(c.params),
                                    s.value("loop", false));
    }
    out.samples = std::move(c);
    return out;
  }

  CurveSpec spec;
  spec.dim = dim;
  spec.dwell = j.value("dwell", 0.02);
  if (!j.contains("arcs") || !j.contains("traversal"))
    throw ValidationError("'" + path + "': need arcs and traversal (or samples)");
  for (const json& a : j["arcs"]) {
    ArcSpec arc;
    arc.id = a.at("id").get<std::string>();
    for (const json& p : a.at("points"))
      arc.points.push_back(vec_from_json(p, dim, "arcs.points"));
    spec.arcs.push_back(std::move(arc));
  }
  for (const json& t : j["traversal"]) {
    TraversalStep step;
    step.arc = t.at("arc").get<std::string>();
    step.dir = t.value("dir", 1) >= 0 ? +1 : -1;
    spec.traversal.push_back(std::move(step));
  }
  out.spec = std::move(spec);
  return out;
}

SampledCurve realize(const LoadedCurve& loaded, const SynthOptions& opts) {
  if (loaded.samples.has_value()) return *loaded.samples;
  if (loaded.spec.has_value()) return synth_curve(*loaded.spec, opts).curve;
  throw ValidationError("empty curve file");
}

void save_curve_spec(const std::string& path, const CurveSpec& spec) {
  json j;
  j["format"] = kCurveFormat;
  j["version"] = kVersion;
  j["dim"] = spec.dim;
  j["dwell"] = spec.dwell;
  j["arcs"] = json::array();
  for (const ArcSpec& a : spec.arcs) {
    json arc;
    arc["id"] = a.id;
    arc["points"] = json::array();
    for (const Vec& p : a.points) arc["points"].push_back(vec_to_json(p));
    j["arcs"].push_back(std::move(arc));
  }
  j["traversal"] = json::array();
  for (const TraversalStep& t : spec.traversal)
    j["traversal"].push_back({{"arc", t.arc}, {"dir", t.dir}});
  write_text_file(path, j.dump(1) + "\n");
}

void save_curve_samples(const std::string& path, const SampledCurve& curve) {
  json j;
  j["format"] = kCurveFormat;
  j["version"] = kVersion;
  j["dim"] = curve.dim;
  json s;
  s["loop"] = curve.loop;
  s["params"] = curve.params;
  s["points"] = json::array();
  s["tangents"] = json::array();
  for (const Vec& p : curve.points) s["points"].push_back(vec_to_json(p));
  for (const Vec& t : curve.tangents) s["tangents"].push_back(vec_to_json(t));
  j["samples"] = std::move(s);
  write_text_file(path, j.dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// Connections.

ConnectionField load_connection_file(const std::string& path, int expected_dim) {
  const json j = load_json(path);
  if (j.value("format", "") != kConnectionFormat)
    throw ValidationError("'" + path + "': not a " + kConnectionFormat + " file");
  if (j.value("version", 0) != kVersion)
    throw ValidationError("'" + path + "': unsupported version");
  const LieGroupSpec group = LieGroupSpec::from_string(j.at("group"));
  const int dim = j.value("dim", expected_dim);
  if (expected_dim > 0 && dim != expected_dim)
    throw ValidationError("'" + path + "': connection dimension mismatch");

  if (j.contains("seed")) {
    RandomConnectionOptions opts;
    opts.degree = j.value("degree", 2);
    opts.sinusoids = j.value("sinusoids", true);
    opts.coeff_scale = j.value("coeff_scale", 0.6);
    return random_connection(group, dim, j["seed"].get<std::uint64_t>(), opts);
  }

  ConnectionField conn;
  conn.group = group;
  conn.dim = dim;
  for (const json& t : j.at("terms")) {
    ConnectionTerm term;
    const std::string kind = t.at("kind").get<std::string>();
    term.algebra_coeffs = t.at("coeffs").get<std::vector<double>>();
    if (term.algebra_coeffs.size() != group.algebra_basis.size())
      throw ValidationError("'" + path + "': wrong coefficient count");
    if (kind == "monomial") {
      term.mu = t.at("mu").get<int>();
      term.basis.kind = BasisTerm::Kind::Monomial;
      term.basis.exponents = t.at("exponents").get<std::vector<int>>();
    } else if (kind == "sinusoid") {
      term.mu = t.at("mu").get<int>();
      term.basis.kind = BasisTerm::Kind::Sinusoid;
      term.basis.freq = t.at("freq").get<std::vector<double>>();
      term.basis.phase = t.value("phase", 0.0);
    } else if (kind == "tube") {
      term.mu = -1;
      term.basis.kind = BasisTerm::Kind::Tube;
      term.basis.tube_radius = t.at("radius").get<double>();
      term.basis.shrink = t.value("shrink", 0.1);
      for (const json& p : t.at("arc"))
        term.basis.arc_points.push_back(vec_from_json(p, dim, "tube arc"));
      term.basis.bbox_lo = term.basis.arc_points.front();
      term.basis.bbox_hi = term.basis.arc_points.front();
      for (const Vec& p : term.basis.arc_points) {
        term.basis.bbox_lo = term.basis.bbox_lo.cwiseMin(p);
        term.basis.bbox_hi = term.basis.bbox_hi.cwiseMax(p);
      }
    } else {
      throw ValidationError("'" + path + "': unknown term kind " + kind);
    }
    conn.terms.push_back(std::move(term));
  }
  return conn;
}

void save_connection(const std::string& path, const ConnectionField& conn) {
  json j;
  j["format"] = kConnectionFormat;
  j["version"] = kVersion;
  j["group"] = conn.group.to_string();
  j["dim"] = conn.dim;
  if (conn.seed != 0) {
    j["seed"] = conn.seed;
  } else {
    j["terms"] = json::array();
    for (const ConnectionTerm& t : conn.terms) {
      json term;
      term["coeffs"] = t.algebra_coeffs;
      switch (t.basis.kind) {
        case BasisTerm::Kind::Monomial:
          term["kind"] = "monomial";
          term["mu"] = t.mu;
          term["exponents"] = t.basis.exponents;
          break;
        case BasisTerm::Kind::Sinusoid:
          term["kind"] = "sinusoid";
          term["mu"] = t.mu;
          term["freq"] = t.basis.freq;
          term["phase"] = t.basis.phase;
          break;
        case BasisTerm::Kind::Tube: {
          term["kind"] = "tube";
          term["radius"] = t.basis.tube_radius;
          term["shrink"] = t.basis.shrink;
          term["arc"] = json::array();
          for (const Vec& p : t.basis.arc_points)
            term["arc"].push_back(vec_to_json(p));
          break;
        }
      }
      j["terms"].push_back(std::move(term));
    }
  }
  write_text_file(path, j.dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// Text exports.

std::string tree_export_text(const FactorTree& tree,
                             const std::vector<std::string>& edge_names) {
  std::string s = "# thinloop-tree v1\n";
  s += "# edges: label parent child length\n";
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& edge = tree.edges[e];
    const std::string label =
        e < edge_names.size() ? edge_names[e] : letter_name(static_cast<int>(e));
    s += "edge " + label + " " + std::to_string(edge.parent_vertex) + " " +
         std::to_string(edge.child_vertex) + " " + fmt(edge.length) + "\n";
  }
  s += "# vertices: id kind depth\n";
  for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
    const char* kind = "root";
    switch (tree.vertices[v].kind) {
      case RegionKind::Root: kind = "root"; break;
      case RegionKind::Tip: kind = "tip"; break;
      case RegionKind::Corner: kind = "corner"; break;
      case RegionKind::Branch: kind = "branch"; break;
    }
    s += "vertex " + std::to_string(v) + " " + kind + " " +
         fmt(tree.vertices[v].depth) + "\n";
  }
  return s;
}

std::string psi_table_text(const MonotoneC1Map& map, int grid) {
  std::string s = "# x\tpsi(x)\tpsi'(x)\n";
  const auto dom = map.domain();
  for (int i = 0; i <= grid; ++i) {
    const double x = dom.lo + (dom.hi - dom.lo) * i / grid;
    s += fmt(x) + "\t" + fmt(map.eval(x)) + "\t" + fmt(map.deriv(x)) + "\n";
  }
  return s;
}

std::string signature_text(const SignatureTensor& sig) {
  std::string s = "# path signature, dim " + std::to_string(sig.dim) +
                  ", depth " + std::to_string(sig.depth) + "\n";
  for (int level = 1; level <= sig.depth; ++level) {
    s += "level " + std::to_string(level) + ":";
    for (double v : sig.levels[level - 1]) s += " " + fmt(v);
    s += "\n";
  }
  return s;
}

std::string format_matrix(const Mat& m) {
  std::string s;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) s += " ";
      s += fmt(m(r, c).real());
      const double im = m(r, c).imag();
      if (im != 0.0) s += (im > 0 ? "+" : "") + fmt(im) + "i";
    }
    s += "\n";
  }
  return s;
}

std::string holonomy_table_text(const LieGroupSpec& group,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<HolonomyResult>& results) {
  std::string s = "# group " + group.to_string() + "\n";
  s += "# seed\t|U-I|\tdefect\trichardson\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const double dev = (results[k].transport - group.identity()).norm();
    s += std::to_string(seeds[k]) + "\t" + fmt(dev) + "\t" +
         fmt(results[k].group_defect) + "\t" +
         fmt(results[k].richardson_error) + "\n";
  }
  return s;
}

std::string thinness_text(const ThinnessReport& rep) {
  std::string s = "thinness report\n";
  s += "  max 2x2 minor (relative): " + fmt(rep.max_minor_rel) + "\n";
  s += "  max boundary partial:     " + fmt(rep.max_edge_partial) + "\n";
  s += "  sup |dH/dt|, |dH/dr|:     " + fmt(rep.sup_dt) + ", " + fmt(rep.sup_dr) + "\n";
  s += "  C1 modulus ratios (t, r): " + fmt(rep.c1_ratio_t) + ", " +
       fmt(rep.c1_ratio_r) + "\n";
  s += std::string("  verdict: ") + (rep.pass ? "PASS" : "FAIL") + "\n";
  return s;
}

std::string decomposition_text(const ArcDecomposition& d, const Word& word) {
  std::string s;
  s += "eps_geo " + fmt(d.eps_geo) + ", v_min " + fmt(d.v_min) + "\n";
  s += "arcs: " + std::to_string(d.arcs.size()) + "\n";
  for (const Arc& a : d.arcs)
    s += "  " + letter_name(a.id) + ": length " + fmt(a.length) + ", " +
         std::to_string(a.points.size()) + " samples\n";
  s += "strata:\n";
  for (const auto& [n, ids] : d.strata)
    s += "  multiplicity " + std::to_string(n) + ": " +
         std::to_string(ids.size()) + " intervals\n";
  s += "a0 components: " + std::to_string(d.a0.size()) + "\n";
  s += "word: " +
       (word.empty() ? "(empty)" : format_word(word, default_names(26))) + "\n";
  return s;
}

std::string grid_frame_text(const HomotopyGrid& grid, int row) {
  std::string s = "# r = " + fmt(grid.r_params[row]) + "\n";
  for (int i = 0; i < grid.t_count(); ++i) {
    s += fmt(grid.t_params[i]);
    for (int k = 0; k < grid.dim; ++k) s += "\t" + fmt(grid.rows[row][i][k]);
    s += "\n";
  }
  return s;
}

}  // namespace thinloop

namespace thinloop {

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
  RunConfig c;
  c.eps_geo = j.value("eps_geo", c.eps_geo);
  c.v_min = j.value("v_min", c.v_min);
  c.theta_tol = j.value("theta_tol", c.theta_tol);
  c.tol_rank = j.value("tol_rank", c.tol_rank);
  c.tol_edge = j.value("tol_edge", c.tol_edge);
  c.tol_group = j.value("tol_group", c.tol_group);
  c.tol_trivial = j.value("tol_trivial", c.tol_trivial);
  c.tol_nontrivial = j.value("tol_nontrivial", c.tol_nontrivial);
  c.tol_factor_rel = j.value("tol_factor_rel", c.tol_factor_rel);
  c.fold_lip_max = j.value("fold_lip_max", c.fold_lip_max);
  c.grid_rows = j.value("grid_rows", c.grid_rows);
  c.samples_per_arc = j.value("samples_per_arc", c.samples_per_arc);
  c.transport_steps = j.value("transport_steps", c.transport_steps);
  c.connections = j.value("connections", c.connections);
  c.signature_level = j.value("signature_level", c.signature_level);
  c.seed = j.value("seed", c.seed);
  c.group = j.value("group", c.group);
  c.out_dir = j.value("out_dir", c.out_dir);
  return c;
}

}  // namespace thinloop

