#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mofs/errors.hpp"

namespace mofs {

// Binary feature-selection mask; bit i = 1 selects feature i.
struct FeatureMask {
  std::vector<std::uint8_t> bits;

  FeatureMask() = default;
  explicit FeatureMask(std::size_t n_features) : bits(n_features, 0) {}

  std::size_t size() const { return bits.size(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : bits) c += b != 0;
    return c;
  }

  bool empty_mask() const { return count() == 0; }

  std::vector<int> selected_indices() const {
    std::vector<int> idx;
    idx.reserve(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) idx.push_back(static_cast<int>(i));
    return idx;
  }

  std::string to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) s[i] = '1';
    return s;
  }

  static FeatureMask from_string(const std::string& s) {
    FeatureMask m(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        m.bits[i] = 1;
      else if (s[i] != '0')
        throw DataError("mask string must contain only '0' and '1'");
    }
    return m;
  }

  // Cheap map key; one byte per bit.
  std::string key() const { return std::string(bits.begin(), bits.end()); }

  bool operator==(const FeatureMask&) const = default;
};

}  // namespace mofs
