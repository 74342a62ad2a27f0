#pragma once

// Ensemble files. Layout:
//
//   QRE1 {"dim":D,"n":N,"kind":K,"seed":S,"materialized":B}\n
//   [N * D * D (re, im) pairs, little-endian IEEE-754 doubles, row-major,
//    unitary-major]                                 -- only when materialized
//
// A nonempty derivation path is stored under an extra "path" key. Header-only
// files are regenerated from the seed on load.

#include <filesystem>
#include <optional>

#include "qrand/sampler.hpp"

namespace qrand {

/// Writes atomically (temporary file, then rename). `materialize` defaults to
/// whether the ensemble holds dense members; explicit ensembles are always
/// written in full.
void save_ensemble(const UnitaryEnsemble& ensemble, const std::filesystem::path& path,
                   std::optional<bool> materialize = std::nullopt);

/// Throws FormatError on a bad magic, malformed header, truncated payload or a
/// member whose unitarity residual exceeds 1e-8.
UnitaryEnsemble load_ensemble(const std::filesystem::path& path);

/// Writes `contents` to `path` through a temporary sibling and rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace qrand
