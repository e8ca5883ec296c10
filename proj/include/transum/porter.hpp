#pragma once

#include <string>

namespace transum {

/// Porter's suffix-stripping stemmer for English. Expects a lowercase
/// ASCII word; words of length <= 2 are returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace transum
