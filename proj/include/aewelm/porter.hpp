#pragma once

#include <string>

namespace aewelm {

// Porter stemming algorithm, original 1980 definition. Expects a lowercase
// ASCII word; words of length <= 2 are returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace aewelm
