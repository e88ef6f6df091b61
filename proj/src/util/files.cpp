#include "dcmdeid/util/files.hpp"

#include <algorithm>

namespace dcmdeid::util {

std::vector<std::filesystem::path> list_dicom_files(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".dcm") out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dcmdeid::util
