// Copyright 2026 The RCAE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary container shared by checkpoints, stats snapshots and feature
// dumps:
//
//   offset 0   8-byte magic (e.g. "RCAECKPT")
//   offset 8   uint32 format version, little-endian
//   offset 12  uint64 header length L, little-endian
//   offset 20  L bytes of UTF-8 JSON header; header["arrays"] lists every
//              payload array as {"name", "shape", "dtype"} in order
//   then       array payloads back to back, IEEE-754 binary64
//              little-endian, row-major; dtype "complex128" stores (re, im)
//              pairs and its shape ends in the implicit pair axis.

#ifndef RCAE_SRC_CONTAINER_H_
#define RCAE_SRC_CONTAINER_H_

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rcae::internal {

inline constexpr std::uint32_t kContainerVersion = 1;

struct OutArray {
  std::string name;
  std::vector<std::int64_t> shape;  // without the pair axis for complex
  bool complex = false;
  // Concatenated chunks form the payload.
  std::vector<std::span<const double>> chunks;
};

struct InArray {
  std::string name;
  std::vector<std::int64_t> shape;
  bool complex = false;
  std::vector<double> values;

  std::size_t element_count() const;
};

void WriteContainer(const std::filesystem::path& path, const char (&magic)[9],
                    nlohmann::json header, const std::vector<OutArray>& arrays);

struct ContainerContents {
  nlohmann::json header;
  std::vector<InArray> arrays;

  const InArray& Get(const std::string& name) const;
  const InArray* Find(const std::string& name) const;
};

ContainerContents ReadContainer(const std::filesystem::path& path, const char (&magic)[9]);

template <typename T>
std::span<const double> AsDoubles(std::span<const T> values) {
  return {reinterpret_cast<const double*>(values.data()), values.size() * sizeof(T) / sizeof(double)};
}

}  // namespace rcae::internal

#endif  // RCAE_SRC_CONTAINER_H_
