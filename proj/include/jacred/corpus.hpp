#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacred/text.hpp"

namespace jacred {

/// Values a shipped example is expected to reproduce.
struct ExpectedAttributes {
  std::optional<unsigned> dex;
  std::optional<unsigned> mfs_observed;
  std::optional<unsigned> sag_external;  ///< quoted from the literature, never computed
  std::optional<bool> keller;
  std::optional<bool> yagzhev;
  std::optional<bool> druzkowski;
  /// Published dimensions of a cubic and a Yagzhev reduction, for comparison only.
  std::optional<unsigned> reference_cubic_dim;
  std::optional<unsigned> reference_yagzhev_dim;
};

struct ExampleEntry {
  std::string id;
  std::string description;
  MapDocument document;
  ExpectedAttributes expected;
};

/// Ids of the shipped examples, in listing order.
std::vector<std::string> builtin_ids();

/// Throws DomainError for an unknown id.
ExampleEntry builtin_example(std::string_view id);

}  // namespace jacred
