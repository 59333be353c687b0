#pragma once

#include "hopfcyc/rational.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing {

inline std::filesystem::path source_dir() { return HOPFCYC_SOURCE_DIR; }
inline std::filesystem::path catalog_dir() { return source_dir() / "catalog"; }
inline std::filesystem::path catalog_file(const std::string& id) { return catalog_dir() / (id + ".sys"); }
inline std::filesystem::path data_file(const std::string& name) { return source_dir() / "tests" / "data" / name; }

// p/q with p in [-range, range] and q in [1, range].
inline hopfcyc::Rational random_rational(std::mt19937_64& rng, long range = 9) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  return hopfcyc::make_rational(num(rng), den(rng));
}

}  // namespace testing
