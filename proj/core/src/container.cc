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

#include "container.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "rcae/error.h"

namespace rcae::internal {
namespace {

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

template <typename T>
void WritePod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T ReadPod(std::istream& in, const std::string& name) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw Error(ErrorCode::kFormatError, name + ": truncated container header");
  return v;
}

std::size_t Product(const std::vector<std::int64_t>& shape) {
  std::size_t n = 1;
  for (std::int64_t s : shape) {
    if (s < 0) throw Error(ErrorCode::kFormatError, "negative array extent");
    n *= static_cast<std::size_t>(s);
  }
  return n;
}

}  // namespace

std::size_t InArray::element_count() const { return Product(shape); }

void WriteContainer(const std::filesystem::path& path, const char (&magic)[9],
                    nlohmann::json header, const std::vector<OutArray>& arrays) {
  nlohmann::json listing = nlohmann::json::array();
  for (const OutArray& a : arrays) {
    std::size_t doubles = 0;
    for (const auto& c : a.chunks) doubles += c.size();
    if (doubles != Product(a.shape) * (a.complex ? 2 : 1)) {
      throw Error(ErrorCode::kFormatError, "array '" + a.name + "' payload does not match shape");
    }
    listing.push_back({{"name", a.name}, {"shape", a.shape},
                       {"dtype", a.complex ? "complex128" : "float64"}});
  }
  header["arrays"] = listing;
  const std::string text = header.dump(2);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(magic, 8);
  WritePod<std::uint32_t>(out, kContainerVersion);
  WritePod<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const OutArray& a : arrays) {
    for (const auto& c : a.chunks) {
      out.write(reinterpret_cast<const char*>(c.data()),
                static_cast<std::streamsize>(c.size() * sizeof(double)));
    }
  }
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

ContainerContents ReadContainer(const std::filesystem::path& path, const char (&magic)[9]) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadablePath, "cannot open " + name);
  char got[8];
  in.read(got, 8);
  if (!in || std::memcmp(got, magic, 8) != 0) {
    throw Error(ErrorCode::kFormatError, name + ": expected " + std::string(magic, 8) + " file");
  }
  const auto version = ReadPod<std::uint32_t>(in, name);
  if (version != kContainerVersion) {
    throw Error(ErrorCode::kFormatError, name + ": unsupported version " + std::to_string(version));
  }
  const auto header_len = ReadPod<std::uint64_t>(in, name);
  if (header_len > (1u << 26)) throw Error(ErrorCode::kFormatError, name + ": header too large");
  std::string text(header_len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw Error(ErrorCode::kFormatError, name + ": truncated header");

  ContainerContents contents;
  try {
    contents.header = nlohmann::json::parse(text);
    for (const auto& entry : contents.header.at("arrays")) {
      InArray a;
      a.name = entry.at("name").get<std::string>();
      a.shape = entry.at("shape").get<std::vector<std::int64_t>>();
      const std::string dtype = entry.at("dtype").get<std::string>();
      if (dtype != "float64" && dtype != "complex128") {
        throw Error(ErrorCode::kFormatError, name + ": unknown dtype " + dtype);
      }
      a.complex = dtype == "complex128";
      a.values.resize(Product(a.shape) * (a.complex ? 2 : 1));
      in.read(reinterpret_cast<char*>(a.values.data()),
              static_cast<std::streamsize>(a.values.size() * sizeof(double)));
      if (!in) throw Error(ErrorCode::kFormatError, name + ": truncated array '" + a.name + "'");
      contents.arrays.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, name + ": bad header: " + e.what());
  }
  return contents;
}

const InArray* ContainerContents::Find(const std::string& name) const {
  for (const InArray& a : arrays) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const InArray& ContainerContents::Get(const std::string& name) const {
  if (const InArray* a = Find(name)) return *a;
  throw Error(ErrorCode::kFormatError, "container has no array '" + name + "'");
}

}  // namespace rcae::internal
