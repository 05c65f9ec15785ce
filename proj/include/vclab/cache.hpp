#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/builders.hpp"
#include "vclab/common.hpp"
#include "vclab/graph.hpp"
#include "vclab/spectral.hpp"

namespace vclab {

using Json = nlohmann::ordered_json;

inline std::string base64_encode(const std::vector<std::uint8_t>& data) {
  static const char* alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    std::uint32_t chunk = std::uint32_t(data[i]) << 16;
    if (i + 1 < data.size()) chunk |= std::uint32_t(data[i + 1]) << 8;
    if (i + 2 < data.size()) chunk |= data[i + 2];
    out.push_back(alphabet[(chunk >> 18) & 63]);
    out.push_back(alphabet[(chunk >> 12) & 63]);
    out.push_back(i + 1 < data.size() ? alphabet[(chunk >> 6) & 63] : '=');
    out.push_back(i + 2 < data.size() ? alphabet[chunk & 63] : '=');
  }
  return out;
}

inline std::vector<std::uint8_t> base64_decode(const std::string& text) {
  const auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) throw Error("base64: length not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        vals[k] = 0;
        ++pad;
      } else {
        vals[k] = value_of(c);
        if (vals[k] < 0 || pad > 0) throw Error("base64: invalid character");
      }
    }
    if (pad > 2) throw Error("base64: too much padding");
    const std::uint32_t chunk = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
    out.push_back((chunk >> 16) & 0xff);
    if (pad < 2) out.push_back((chunk >> 8) & 0xff);
    if (pad < 1) out.push_back(chunk & 0xff);
  }
  return out;
}

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Content hash over the header fields and the canonical packed rows.
inline std::string graph_hash(const DenseGraph& g) {
  const std::string header = "vclab-graph-v1|" + g.meta().family + "|" + std::to_string(g.meta().q) + "|" +
                             std::to_string(g.meta().t) + "|" + std::to_string(g.n()) + "|" +
                             (g.has_loops() ? "1" : "0") + "|";
  std::uint64_t h = fnv1a64(reinterpret_cast<const std::uint8_t*>(header.data()), header.size());
  const auto rows = g.packed_rows();
  h = fnv1a64(rows.data(), rows.size(), h);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline Json graph_to_json(const DenseGraph& g) {
  Json doc;
  doc["schema"] = "vclab-graph-v1";
  doc["family"] = g.meta().family;
  doc["q"] = g.meta().q;
  doc["t"] = g.meta().t;
  doc["n"] = g.n();
  doc["loops"] = g.has_loops();
  doc["edges"] = base64_encode(g.packed_rows());
  return doc;
}

inline DenseGraph graph_from_json(const Json& doc) {
  if (!doc.contains("schema") || doc["schema"] != "vclab-graph-v1")
    throw Error("graph cache: unexpected schema");
  const auto n = doc.at("n").get<std::uint32_t>();
  DenseGraph g = DenseGraph::from_packed_rows(n, base64_decode(doc.at("edges").get<std::string>()));
  GraphMeta meta;
  meta.family = doc.at("family").get<std::string>();
  meta.q = doc.at("q").get<std::uint32_t>();
  meta.t = doc.at("t").get<std::uint32_t>();
  g.set_meta(meta);
  if (g.has_loops() != doc.at("loops").get<bool>()) throw Error("graph cache: loops flag disagrees with matrix");
  // labels for the field families are reproducible from (family, q, t)
  if (meta.family == "distance") {
    g.set_labels(enumerate_vectors(meta.q, meta.t));
  } else if (meta.family == "dotproduct") {
    auto labels = enumerate_vectors(meta.q, meta.t);
    labels.erase(labels.begin());
    g.set_labels(std::move(labels));
  }
  return g;
}

inline void save_json(const Json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(1) << "\n";
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  Json doc;
  in >> doc;
  return doc;
}

inline void save_graph(const DenseGraph& g, const std::string& path) { save_json(graph_to_json(g), path); }

inline DenseGraph load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

/// Spectrum cache document. Eigenvalues are serialized as decimal strings
/// with 12 significant digits; lambda_noloop appears only for loopy graphs.
inline Json spectrum_to_json(const SpectralProfile& profile, const std::string& hash,
                             std::optional<double> lambda_noloop = std::nullopt) {
  Json doc;
  doc["schema"] = "vclab-spectrum-v1";
  doc["graph-hash"] = hash;
  Json eigs = Json::array();
  for (double e : profile.eigenvalues) eigs.push_back(fmt_g(e));
  doc["eigenvalues"] = eigs;
  if (profile.d)
    doc["d"] = *profile.d;
  else
    doc["d"] = nullptr;
  doc["lambda"] = fmt_g(profile.lambda);
  if (lambda_noloop) doc["lambda-noloop"] = fmt_g(*lambda_noloop);
  return doc;
}

}  // namespace vclab
