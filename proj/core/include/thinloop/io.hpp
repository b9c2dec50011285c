#ifndef THINLOOP_IO_HPP
#define THINLOOP_IO_HPP

#include <optional>
#include <string>

#include "thinloop/curve.hpp"
#include "thinloop/holonomy.hpp"
#include "thinloop/homotopy.hpp"
#include "thinloop/signature.hpp"
#include "thinloop/tree.hpp"

namespace thinloop {

// Curve files (JSON, versioned): either an arc/traversal description or
// raw samples. See docs/formats.md for the schema.
struct LoadedCurve {
  std::optional<CurveSpec> spec;
  std::optional<SampledCurve> samples;
};

LoadedCurve load_curve_file(const std::string& path);
SampledCurve realize(const LoadedCurve& loaded, const SynthOptions& opts = {});
void save_curve_spec(const std::string& path, const CurveSpec& spec);
void save_curve_samples(const std::string& path, const SampledCurve& curve);

// Connection files: group, dimension, and either a generator seed or
// explicit terms.
ConnectionField load_connection_file(const std::string& path, int expected_dim);
void save_connection(const std::string& path, const ConnectionField& conn);

// Tree export: versioned edge-list text plus vertex table.
std::string tree_export_text(const FactorTree& tree,
                             const std::vector<std::string>& edge_names);

// Delimited tables.
std::string psi_table_text(const MonotoneC1Map& map, int grid);
std::string signature_text(const SignatureTensor& s);
std::string holonomy_table_text(const LieGroupSpec& group,
                                const std::vector<std::uint64_t>& seeds,
                                const std::vector<HolonomyResult>& results);
std::string thinness_text(const ThinnessReport& rep);
std::string decomposition_text(const ArcDecomposition& d, const Word& word);
std::string grid_frame_text(const HomotopyGrid& grid, int row);

std::string format_matrix(const Mat& m);  // row-major decimal

void write_text_file(const std::string& path, const std::string& content);

}  // namespace thinloop

#endif
