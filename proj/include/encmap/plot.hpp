#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "encmap/analysis.hpp"
#include "encmap/homology.hpp"
#include "encmap/io.hpp"

namespace encmap {

enum class PlotKind { kDiagram, kEmbedding, kSnr };
PlotKind parse_plot_kind(std::string_view s);  // diagram | embedding | snr

// Standalone SVG documents. Markers carry class "dim0" / "dim1" (diagrams)
// or "point" (embeddings) so tests can count them.
std::string diagram_svg(const PersistenceDiagram& dgm);
std::string embedding_svg(const Embedding& e);
std::string snr_svg(const std::vector<io::SnrRecord>& rows);

// Reads the artifact with the matching reader and writes the SVG.
void plot(const std::filesystem::path& artifact, PlotKind kind, const std::filesystem::path& out);

}  // namespace encmap
