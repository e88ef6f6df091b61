#pragma once

#include <filesystem>
#include <vector>

namespace dcmdeid::util {

/// All regular files with a ".dcm" extension below `root`, sorted by path.
[[nodiscard]] std::vector<std::filesystem::path> list_dicom_files(const std::filesystem::path& root);

}  // namespace dcmdeid::util
