// Copyright 2026 The Printscore Authors.
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

#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "printscore/mesh.hpp"

namespace printscore {

enum class StlFormat { kBinary, kAscii };

class StlParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint16_t load_u16(const char* p) {
  auto b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

inline std::uint32_t load_u32(const char* p) {
  auto b = reinterpret_cast<const unsigned char*>(p);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

inline float load_f32(const char* p) { return std::bit_cast<float>(load_u32(p)); }

inline void store_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void store_f32(std::string& out, float f) {
  store_u32(out, std::bit_cast<std::uint32_t>(f));
}

/** Whitespace-separated token scanner over an ASCII STL body. */
class StlTokens {
 public:
  explicit StlTokens(std::string_view text) : text_(text) {}

  bool next(std::string& tok) {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    tok.assign(text_.substr(start, pos_ - start));
    return true;
  }

  /** Rest of the current line, trimmed; used for solid names. */
  std::string rest_of_line() {
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end;
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
      out.pop_back();
    std::size_t lead = 0;
    while (lead < out.size() &&
           std::isspace(static_cast<unsigned char>(out[lead])))
      ++lead;
    return out.substr(lead);
  }

  bool at_end() {
    std::size_t save = pos_;
    std::string tok;
    bool more = next(tok);
    pos_ = save;
    return !more;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

inline double parse_stl_number(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) {
    throw StlParseError("malformed ASCII STL: expected a number, got '" + tok +
                        "'");
  }
  return v;
}

/** Parses the ASCII grammar. With `structure_only` the facet data is
 *  discarded and only grammatical validity is reported (used by format
 *  detection, where coordinate values are irrelevant). Throws StlParseError
 *  on any deviation from the grammar. */
inline TriangleMesh parse_ascii_stl(std::string_view text,
                                    bool structure_only) {
  StlTokens toks(text);
  std::string tok;
  auto expect = [&](const char* what) {
    if (!toks.next(tok)) {
      throw StlParseError(std::string("malformed ASCII STL: expected '") +
                          what + "', got end of file");
    }
    if (tok != what) {
      throw StlParseError(std::string("malformed ASCII STL: expected '") +
                          what + "', got '" + tok + "'");
    }
  };

  expect("solid");
  TriangleMesh mesh;
  mesh.name = toks.rest_of_line();

  while (true) {
    if (!toks.next(tok)) {
      throw StlParseError("malformed ASCII STL: missing 'endsolid'");
    }
    if (tok == "endsolid") break;
    if (tok != "facet") {
      throw StlParseError("malformed ASCII STL: expected 'facet', got '" +
                          tok + "'");
    }
    expect("normal");
    for (int i = 0; i < 3; ++i) {
      if (!toks.next(tok)) {
        throw StlParseError("malformed ASCII STL: truncated facet normal");
      }
      parse_stl_number(tok);  // normals are recomputed, value discarded
    }
    expect("outer");
    expect("loop");
    Triangle tri;
    for (int v = 0; v < 3; ++v) {
      expect("vertex");
      Vec3 p;
      double* coord[3] = {&p.x, &p.y, &p.z};
      for (int i = 0; i < 3; ++i) {
        if (!toks.next(tok)) {
          throw StlParseError("malformed ASCII STL: truncated vertex");
        }
        *coord[i] = parse_stl_number(tok);
      }
      if (!structure_only) {
        if (!is_finite(p)) {
          throw StlParseError("ASCII STL vertex has non-finite coordinate");
        }
        tri[v] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(p);
      }
    }
    expect("endloop");
    expect("endfacet");
    if (!structure_only) mesh.triangles.push_back(tri);
  }
  toks.rest_of_line();  // optional name after endsolid
  if (!toks.at_end()) {
    throw StlParseError("malformed ASCII STL: content after 'endsolid'");
  }
  return mesh;
}

inline bool ascii_grammar_ok(std::string_view bytes) {
  try {
    parse_ascii_stl(bytes, /*structure_only=*/true);
    return true;
  } catch (const StlParseError&) {
    return false;
  }
}

constexpr std::size_t kBinaryHeaderSize = 84;  // 80-byte comment + u32 count
constexpr std::size_t kBinaryFacetSize = 50;

inline bool starts_with_solid(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i])))
    ++i;
  if (bytes.size() - i < 5 || bytes.substr(i, 5) != "solid") return false;
  std::size_t after = i + 5;
  return after == bytes.size() ||
         std::isspace(static_cast<unsigned char>(bytes[after]));
}

}  // namespace detail

/** Classifies raw bytes as ASCII or binary STL.
 *
 *  A file is ASCII only if it begins with a `solid` token and the whole body
 *  satisfies the ASCII grammar; everything else must pass the binary length
 *  check (84-byte prologue plus 50 bytes per declared facet). Binary files
 *  whose comment header happens to begin with "solid" are therefore still
 *  detected as binary. */
inline StlFormat detect_format(std::string_view bytes) {
  if (detail::starts_with_solid(bytes) && detail::ascii_grammar_ok(bytes)) {
    return StlFormat::kAscii;
  }
  if (bytes.size() >= detail::kBinaryHeaderSize) {
    std::uint64_t n = detail::load_u32(bytes.data() + 80);
    if (bytes.size() ==
        detail::kBinaryHeaderSize + n * detail::kBinaryFacetSize) {
      return StlFormat::kBinary;
    }
  }
  throw StlParseError("not an STL file: length inconsistent with binary "
                      "layout and body violates the ASCII grammar");
}

/** Parses STL bytes into an unwelded triangle soup: every facet contributes
 *  three fresh vertices, exactly as stored in the file. Facet normals are
 *  ignored (they are recomputed from windings wherever needed). Callers
 *  almost always want weld_vertices() next. */
inline TriangleMesh parse_stl(std::string_view bytes) {
  if (detail::starts_with_solid(bytes)) {
    try {
      return detail::parse_ascii_stl(bytes, /*structure_only=*/false);
    } catch (const StlParseError&) {
      // Binary files routinely start their comment header with "solid"; fall
      // through to the binary reader only when the length layout agrees,
      // otherwise the ASCII diagnosis is the informative one.
      if (bytes.size() < detail::kBinaryHeaderSize ||
          bytes.size() != detail::kBinaryHeaderSize +
                              static_cast<std::uint64_t>(
                                  detail::load_u32(bytes.data() + 80)) *
                                  detail::kBinaryFacetSize) {
        throw;
      }
    }
  }
  if (bytes.size() < detail::kBinaryHeaderSize) {
    throw StlParseError("not an STL file: shorter than the 84-byte binary "
                        "prologue and not valid ASCII");
  }
  const std::uint64_t n = detail::load_u32(bytes.data() + 80);
  const std::uint64_t want =
      detail::kBinaryHeaderSize + n * detail::kBinaryFacetSize;
  if (bytes.size() < want) {
    throw StlParseError(
        "truncated binary STL: header declares " + std::to_string(n) +
        " facets (" + std::to_string(want) + " bytes), file has " +
        std::to_string(bytes.size()));
  }
  if (bytes.size() > want) {
    throw StlParseError("binary STL has " +
                        std::to_string(bytes.size() - want) +
                        " trailing bytes after the declared facets");
  }
  TriangleMesh mesh;
  mesh.vertices.reserve(n * 3);
  mesh.triangles.reserve(n);
  const char* p = bytes.data() + detail::kBinaryHeaderSize;
  for (std::uint64_t f = 0; f < n; ++f, p += detail::kBinaryFacetSize) {
    // 12 floats: normal (skipped) then three vertices.
    Triangle tri;
    for (int v = 0; v < 3; ++v) {
      Vec3 q{detail::load_f32(p + 12 + 12 * v),
             detail::load_f32(p + 16 + 12 * v),
             detail::load_f32(p + 20 + 12 * v)};
      if (!is_finite(q)) {
        throw StlParseError("binary STL facet " + std::to_string(f) +
                            " has non-finite vertex");
      }
      tri[v] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(q);
    }
    mesh.triangles.push_back(tri);
  }
  return mesh;
}

namespace detail {

inline std::string sanitized_solid_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    out.push_back(std::isspace(static_cast<unsigned char>(c)) ? '_' : c);
  }
  return out.empty() ? "mesh" : out;
}

inline void format_ascii_float(std::ostringstream& os, float v) {
  os << v;
}

}  // namespace detail

/** Serializes a mesh to STL bytes. Binary output uses a zeroed header and
 *  zero attribute byte counts; normals are recomputed from triangle winding.
 *  Coordinates narrow to float32, as the format requires. */
inline std::string write_stl(const TriangleMesh& mesh,
                             StlFormat format = StlFormat::kBinary) {
  validate_mesh(mesh);
  if (format == StlFormat::kBinary) {
    std::string out(80, '\0');
    detail::store_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
    out.reserve(out.size() + mesh.triangles.size() * detail::kBinaryFacetSize);
    for (const Triangle& t : mesh.triangles) {
      Vec3 n = triangle_normal(mesh, t);
      detail::store_f32(out, static_cast<float>(n.x));
      detail::store_f32(out, static_cast<float>(n.y));
      detail::store_f32(out, static_cast<float>(n.z));
      for (int v = 0; v < 3; ++v) {
        const Vec3& p = mesh.vertices[t[v]];
        detail::store_f32(out, static_cast<float>(p.x));
        detail::store_f32(out, static_cast<float>(p.y));
        detail::store_f32(out, static_cast<float>(p.z));
      }
      out.push_back('\0');  // attribute byte count = 0
      out.push_back('\0');
    }
    return out;
  }

  std::ostringstream os;
  os.precision(9);
  const std::string name = detail::sanitized_solid_name(mesh.name);
  os << "solid " << name << "\n";
  for (const Triangle& t : mesh.triangles) {
    Vec3 n = triangle_normal(mesh, t);
    os << "  facet normal " << static_cast<float>(n.x) << ' '
       << static_cast<float>(n.y) << ' ' << static_cast<float>(n.z) << "\n";
    os << "    outer loop\n";
    for (int v = 0; v < 3; ++v) {
      const Vec3& p = mesh.vertices[t[v]];
      os << "      vertex " << static_cast<float>(p.x) << ' '
         << static_cast<float>(p.y) << ' ' << static_cast<float>(p.z) << "\n";
    }
    os << "    endloop\n";
    os << "  endfacet\n";
  }
  os << "endsolid " << name << "\n";
  return os.str();
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file_bytes(const std::string& path,
                             std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for write: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline TriangleMesh read_stl_file(const std::string& path) {
  TriangleMesh m = parse_stl(read_file_bytes(path));
  if (m.name.empty()) m.name = path;
  return m;
}

inline void write_stl_file(const TriangleMesh& mesh, const std::string& path,
                           StlFormat format = StlFormat::kBinary) {
  write_file_bytes(path, write_stl(mesh, format));
}

}  // namespace printscore
