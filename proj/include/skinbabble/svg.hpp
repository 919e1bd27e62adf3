#pragma once

#include <filesystem>

namespace skinbabble {

// Plots are derived artifacts regenerated from the CSVs in a result
// directory; they are never a source of truth. Each file embeds its
// dimensions and the config hash as a leading metadata comment.

// Observation-space scatter: grey explored goals, taxels colored by reach
// class (blue exact, magenta with error + error/5 circle, red unreached).
void write_skin_svg(const std::filesystem::path& result_dir);

// Mean MRE and cumulative touches against the checkpoint iteration.
void write_curves_svg(const std::filesystem::path& result_dir);

// Strategy comparison curves for a matrix directory (reads comparison.csv).
void write_comparison_svg(const std::filesystem::path& matrix_dir);

} // namespace skinbabble
