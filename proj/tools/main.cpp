// thinloop: decide thin-homotopy / holonomic equivalence of sampled
// loops, and inspect every stage of the pipeline (decomposition, word,
// tree factorization, explicit homotopies, holonomy and signatures).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "thinloop/config.hpp"
#include "thinloop/corpus.hpp"
#include "thinloop/crosscheck.hpp"
#include "thinloop/io.hpp"
#include "thinloop/svg.hpp"

using namespace thinloop;
namespace fs = std::filesystem;

namespace {

struct Cli {
  RunConfig cfg;
  std::string config_file;
  std::vector<std::string> emit;  // svg, frames, tables

  bool emits(const std::string& what) const {
    return std::find(emit.begin(), emit.end(), what) != emit.end();
  }
  fs::path out(const std::string& name) const {
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
  }
  SynthOptions synth_options() const {
    SynthOptions o;
    o.samples_per_arc = cfg.samples_per_arc;
    return o;
  }
  DecomposeParams decompose_params() const {
    DecomposeParams p;
    p.eps_geo = cfg.eps_geo;
    p.v_min = cfg.v_min;
    return p;
  }
  FactorParams factor_params() const {
    FactorParams p;
    p.theta_tol = cfg.theta_tol;
    p.seed = static_cast<unsigned>(cfg.seed);
    return p;
  }
  HomotopyParams homotopy_params() const {
    HomotopyParams p;
    p.rows = cfg.grid_rows;
    return p;
  }
  BatteryParams battery_params() const {
    BatteryParams p;
    p.decompose = decompose_params();
    p.factor = factor_params();
    p.homotopy = homotopy_params();
    p.group = LieGroupSpec::from_string(cfg.group);
    p.connections = cfg.connections;
    p.seed = cfg.seed;
    p.transport_steps = cfg.transport_steps;
    p.tol_trivial = cfg.tol_trivial;
    p.tol_nontrivial = cfg.tol_nontrivial;
    p.tol_factor_rel = cfg.tol_factor_rel;
    p.fold_lip_max = cfg.fold_lip_max;
    p.thin.tol_rank = cfg.tol_rank;
    p.thin.tol_edge = cfg.tol_edge;
    return p;
  }
  SampledCurve load(const std::string& path) const {
    return realize(load_curve_file(path), synth_options());
  }
};

int run_synth(const Cli& cli, const std::string& in, const std::string& outfile) {
  const LoadedCurve loaded = load_curve_file(in);
  if (!loaded.spec.has_value())
    throw ValidationError("synth: input already holds raw samples");
  const SynthResult r = synth_curve(*loaded.spec, cli.synth_options());
  save_curve_samples(outfile, r.curve);
  std::cout << "word: " << format_word(r.word, r.names) << "\n";
  std::cout << "samples: " << r.curve.sample_count() << ", loop: "
            << (r.curve.loop ? "yes" : "no") << "\n";
  std::cout << "wrote " << outfile << "\n";
  return 0;
}

int run_decompose(const Cli& cli, const std::string& in) {
  const SampledCurve c = cli.load(in);
  const ArcDecomposition d = decompose(c, cli.decompose_params());
  const Word w = word_of(d);
  std::cout << decomposition_text(d, w);
  if (cli.emits("tables"))
    write_text_file(cli.out("decomposition.txt").string(),
                    decomposition_text(d, w));
  if (cli.emits("svg"))
    write_text_file(cli.out("curve.svg").string(), curve_svg(c));
  return 0;
}

int run_reduce(const std::string& text) {
  std::vector<std::string> names;
  const Word w = parse_word(text, names);
  const Word r = reduce(w);
  std::cout << (r.empty() ? "(empty)" : format_word(r, names)) << "\n";
  return 0;
}

int run_equiv(const Cli& cli, const std::string& a_path,
              const std::string& b_path) {
  const SampledCurve a = cli.load(a_path), b = cli.load(b_path);
  const WordComparison words =
      compare_reduced_words(a, b, cli.decompose_params());
  std::cout << "reduced word of first curve:  "
            << (words.word_a.empty() ? "(empty)" : words.word_a) << "\n";
  std::cout << "reduced word of second curve: "
            << (words.word_b.empty() ? "(empty)" : words.word_b) << "\n";
  std::cout << "verdict: " << (words.equal ? "EQUIVALENT" : "NOT EQUIVALENT")
            << "\n";
  return words.equal ? 0 : 1;
}

int run_tree(const Cli& cli, const std::string& in) {
  const SampledCurve c = cli.load(in);
  const ArcDecomposition d = decompose(c, cli.decompose_params());
  const TreeFactorization f = factor_curve(c, d, cli.factor_params());
  const auto names =
      relabeled_names(f.relabeled, default_names(static_cast<int>(d.arcs.size())));
  const std::string text = tree_export_text(f.tree, names);
  std::cout << text;
  std::cout << "factorization error: " << f.fact.report.max_point_error
            << "  (curve length " << arclength_table(c).total() << ")\n";
  std::cout << "fold Lipschitz:      " << f.fact.report.fold_lipschitz << "\n";
  std::cout << "fused corners:       " << f.fused.fused_away << "\n";
  write_text_file(cli.out("tree.txt").string(), text);
  if (cli.emits("svg"))
    write_text_file(cli.out("annuli.svg").string(),
                    semi_annulus_svg(f.tree, d, names));
  return 0;
}

int run_contract(const Cli& cli, const std::string& in) {
  const SampledCurve c = cli.load(in);
  const RemoveWhiskersResult res = remove_whiskers(
      c, cli.decompose_params(), cli.factor_params(), cli.homotopy_params());
  ThinnessTolerances tol;
  tol.tol_rank = cli.cfg.tol_rank;
  tol.tol_edge = cli.cfg.tol_edge;
  const ThinnessReport rep = check_thin(res.grid, tol);
  const std::vector<std::string> names = default_names(26);
  std::cout << "word:    "
            << (res.source_word.empty() ? "(empty)"
                                        : format_word(res.source_word, names))
            << "\n";
  std::cout << "reduced: "
            << (res.reduced_word.empty() ? "(empty)"
                                         : format_word(res.reduced_word, names))
            << "\n";
  std::cout << "whisker segments contracted: " << res.segment_count << "\n";
  std::cout << thinness_text(rep);
  save_curve_samples(cli.out("target.json").string(), res.target);
  if (cli.emits("svg"))
    write_text_file(cli.out("homotopy.svg").string(), homotopy_svg(res.grid));
  if (cli.emits("frames")) {
    const int stride = std::max(1, res.grid.r_count() / 32);
    for (int j = 0; j < res.grid.r_count(); j += stride) {
      char name[64];
      std::snprintf(name, sizeof name, "frame_%04d.tsv", j);
      write_text_file(cli.out(name).string(), grid_frame_text(res.grid, j));
    }
  }
  if (cli.emits("tables"))
    write_text_file(cli.out("thinness.txt").string(), thinness_text(rep));
  return rep.pass ? 0 : 2;
}

int run_holonomy(const Cli& cli, const std::string& in,
                 const std::string& conn_file) {
  const SampledCurve c = cli.load(in);
  const LieGroupSpec group = LieGroupSpec::from_string(cli.cfg.group);
  std::vector<std::uint64_t> seeds;
  std::vector<HolonomyResult> results;
  if (!conn_file.empty()) {
    const ConnectionField conn = load_connection_file(conn_file, c.dim);
    seeds.push_back(conn.seed);
    results.push_back(transport(c, conn, cli.cfg.transport_steps));
  } else {
    for (int k = 0; k < cli.cfg.connections; ++k) {
      const std::uint64_t seed = cli.cfg.seed + static_cast<std::uint64_t>(k);
      seeds.push_back(seed);
      results.push_back(transport(c, random_connection(group, c.dim, seed),
                                  cli.cfg.transport_steps));
    }
  }
  std::cout << holonomy_table_text(group, seeds, results);
  double worst = 0.0;
  for (const auto& r : results)
    worst = std::max(worst, (r.transport - group.identity()).norm());
  std::cout << "worst |U - I|: " << worst << "\n";
  if (cli.emits("tables")) {
    std::string dump = holonomy_table_text(group, seeds, results);
    for (std::size_t k = 0; k < results.size(); ++k)
      dump += "# U for seed " + std::to_string(seeds[k]) + "\n" +
              format_matrix(results[k].transport);
    write_text_file(cli.out("holonomy.txt").string(), dump);
  }
  return 0;
}

int run_signature(const Cli& cli, const std::string& in, int level) {
  const SampledCurve c = cli.load(in);
  const SignatureTensor s = signature(c, level);
  std::cout << signature_text(s);
  if (c.dim == 2 && level >= 2)
    std::cout << "level-2 antisymmetric part (signed area): "
              << signature_area_2d(s) << "\n";
  if (cli.emits("tables"))
    write_text_file(cli.out("signature.txt").string(), signature_text(s));
  return 0;
}

int run_crosscheck(const Cli& cli, const std::string& a_path,
                   const std::string& b_path) {
  const SampledCurve a = cli.load(a_path), b = cli.load(b_path);
  const CrosscheckReport rep = crosscheck(a, b, cli.battery_params());
  const std::string text = render_crosscheck(rep);
  std::cout << text;
  if (cli.emits("tables"))
    write_text_file(cli.out("crosscheck.txt").string(), text);
  if (!rep.agree) return 2;
  return rep.equivalent ? 0 : 1;
}

int run_psi(const Cli& cli, const std::string& set_text, int grid,
            const std::string& outfile) {
  std::vector<double> s;
  std::stringstream ss(set_text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) s.push_back(std::stod(tok));
  const MonotoneC1Map m = psi(s);
  const std::string table = psi_table_text(m, grid);
  if (outfile.empty())
    std::cout << table;
  else
    write_text_file(outfile, table);
  std::cout << "sup |psi'| = " << m.sup_deriv() << "\n";
  (void)cli;
  return 0;
}

int run_corpus(const Cli& cli, bool list, const std::string& name,
               const std::string& outfile) {
  if (list || name.empty()) {
    for (const CorpusEntry& e : corpus())
      std::cout << e.name << "\t" << (e.loop ? "loop" : "open") << "\t"
                << (e.whisker ? "whisker" : "reduced") << "\t" << e.word
                << "\n";
    return 0;
  }
  const CorpusEntry& e = corpus_entry(name);
  const std::string path =
      outfile.empty() ? cli.out(e.name + ".json").string() : outfile;
  save_curve_spec(path, e.spec);
  std::cout << "wrote " << path << " (word " << e.word << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"thin-homotopy / holonomic equivalence of sampled loops"};
  app.require_subcommand(1);

  app.add_option("--config", cli.config_file, "JSON config file");
  auto* geo = app.add_option("--tol-geo", cli.cfg.eps_geo,
                             "geometric identification tolerance (0: auto)");
  auto* vmin = app.add_option("--v-min", cli.cfg.v_min,
                              "critical-speed threshold (0: auto)");
  auto* grid_opt = app.add_option("--grid", cli.cfg.grid_rows,
                                  "homotopy grid row budget");
  auto* samples = app.add_option("--samples", cli.cfg.samples_per_arc,
                                 "samples per traversal leg");
  auto* group = app.add_option("--group", cli.cfg.group, "U1, SU2, SO3 or SL2R");
  auto* seed = app.add_option("--seed", cli.cfg.seed, "base RNG seed");
  auto* conns = app.add_option("--connections", cli.cfg.connections,
                               "random connections per verdict");
  auto* steps = app.add_option("--steps", cli.cfg.transport_steps,
                               "transport substep budget");
  auto* theta = app.add_option("--theta-tol", cli.cfg.theta_tol,
                               "spurious-corner angle tolerance");
  auto* outdir = app.add_option("--out", cli.cfg.out_dir, "output directory");
  app.add_option("--emit", cli.emit, "artifacts: svg, frames, tables")
      ->delimiter(',');

  std::string in_a, in_b, out_file, word_text, conn_file, psi_set, name;
  int level = 4, psi_grid = 1000;
  bool list_flag = false;

  auto* c_synth =
      app.add_subcommand("synth", "synthesize a curve from an arc/traversal spec");
  c_synth->add_option("spec", in_a)->required();
  c_synth->add_option("-o,--output", out_file)->required();

  auto* c_dec =
      app.add_subcommand("decompose", "multiplicity strata, arcs and the word");
  c_dec->add_option("curve", in_a)->required();

  auto* c_red = app.add_subcommand(
      "reduce", "freely reduce a word (token syntax: a b b' c)");
  c_red->add_option("word", word_text)->required();

  auto* c_eq =
      app.add_subcommand("equiv", "reduced-word equivalence of two curves");
  c_eq->add_option("first", in_a)->required();
  c_eq->add_option("second", in_b)->required();

  auto* c_tree = app.add_subcommand(
      "tree", "tree factorization and semi-annulus diagram");
  c_tree->add_option("curve", in_a)->required();

  auto* c_con =
      app.add_subcommand("contract", "thin homotopy contracting all whiskers");
  c_con->add_option("curve", in_a)->required();

  auto* c_hol = app.add_subcommand(
      "holonomy", "parallel transport against random connections");
  c_hol->add_option("curve", in_a)->required();
  c_hol->add_option("--conn", conn_file, "explicit connection file");

  auto* c_sig =
      app.add_subcommand("signature", "iterated-integral signature tensor");
  c_sig->add_option("curve", in_a)->required();
  c_sig->add_option("--level", level, "truncation level (<= 5)");

  auto* c_x = app.add_subcommand(
      "crosscheck", "all four equivalence routes on a pair of curves");
  c_x->add_option("first", in_a)->required();
  c_x->add_option("second", in_b)->required();

  auto* c_psi = app.add_subcommand(
      "psi", "monotone C1 surjection with prescribed critical values");
  c_psi->add_option("--set", psi_set, "comma-separated critical values in (0,1)");
  c_psi->add_option("--grid", psi_grid);
  c_psi->add_option("-o,--output", out_file);

  auto* c_corpus = app.add_subcommand("corpus", "bundled example curves");
  c_corpus->add_flag("--list", list_flag);
  c_corpus->add_option("--write", name, "corpus entry to write as a spec file");
  c_corpus->add_option("-o,--output", out_file);

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    // Precedence: defaults < config file < explicit flags.
    if (!cli.config_file.empty()) {
      const RunConfig file_cfg = RunConfig::from_file(cli.config_file);
      RunConfig merged = file_cfg;
      if (!geo->empty()) merged.eps_geo = cli.cfg.eps_geo;
      if (!vmin->empty()) merged.v_min = cli.cfg.v_min;
      if (!grid_opt->empty()) merged.grid_rows = cli.cfg.grid_rows;
      if (!samples->empty()) merged.samples_per_arc = cli.cfg.samples_per_arc;
      if (!group->empty()) merged.group = cli.cfg.group;
      if (!seed->empty()) merged.seed = cli.cfg.seed;
      if (!conns->empty()) merged.connections = cli.cfg.connections;
      if (!steps->empty()) merged.transport_steps = cli.cfg.transport_steps;
      if (!theta->empty()) merged.theta_tol = cli.cfg.theta_tol;
      if (!outdir->empty()) merged.out_dir = cli.cfg.out_dir;
      cli.cfg = merged;
    }

    if (*c_synth) return run_synth(cli, in_a, out_file);
    if (*c_dec) return run_decompose(cli, in_a);
    if (*c_red) return run_reduce(word_text);
    if (*c_eq) return run_equiv(cli, in_a, in_b);
    if (*c_tree) return run_tree(cli, in_a);
    if (*c_con) return run_contract(cli, in_a);
    if (*c_hol) return run_holonomy(cli, in_a, conn_file);
    if (*c_sig) return run_signature(cli, in_a, level);
    if (*c_x) return run_crosscheck(cli, in_a, in_b);
    if (*c_psi) return run_psi(cli, psi_set, psi_grid, out_file);
    if (*c_corpus) return run_corpus(cli, list_flag, name, out_file);
  } catch (const ResolutionError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
