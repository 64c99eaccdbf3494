#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "builders.hpp"

namespace atlaskit {

struct CatalogEntry {
  std::string name;
  std::string description;
};

/// Representative names; the numeric families accept any prime or size in
/// range (kp<n>_f<p>, doubled_origin_f<p>, sphere_f<p>, full<k>, group<k>).
inline std::vector<CatalogEntry> catalog_entries() {
  return {
      {"kp1_f3", "projective line over F_3 (cocycle kit)"},
      {"kp2_f2", "projective plane over F_2 (cocycle kit)"},
      {"kp2_f3", "projective plane over F_3 (cocycle kit)"},
      {"plane_f5", "projective plane over F_5, three transcribed maps only (cocycle kit)"},
      {"kp3_f2", "projective 3-space over F_2 (cocycle kit)"},
      {"doubled_origin_f5", "F_5 with the origin doubled (cocycle kit)"},
      {"sphere_f5", "two copies of F_5 glued by inversion (epos kit)"},
      {"op2", "octonion plane over Q (cocycle kit, sampled checks only)"},
      {"full2", "all local bijections of a 2-set (concrete atlas)"},
      {"group3", "all bijections of a 3-set (concrete atlas)"},
      {"chain", "three overlapping charts on 5 points (concrete atlas)"},
  };
}

inline std::optional<GluingFile> catalog_kit(const std::string& name) {
  std::smatch m;
  static const std::regex kp(R"(kp([1-4])_f([0-9]+))"), dbl(R"(doubled_origin_f([0-9]+))"), sph(R"(sphere_f([0-9]+))"),
      plane(R"(plane_f([0-9]+))");
  if (std::regex_match(name, m, kp))
    return projective_space_kit(std::stoull(m[2].str()), static_cast<unsigned>(std::stoul(m[1].str())));
  if (std::regex_match(name, m, dbl)) return doubled_origin_kit(std::stoull(m[1].str()));
  if (std::regex_match(name, m, sph)) return sphere_kit(std::stoull(m[1].str()));
  if (std::regex_match(name, m, plane)) return projective_plane_kit(Algebra::prime_field(std::stoull(m[1].str())));
  if (name == "op2") return projective_plane_kit(Algebra::parse("cd:Q:3"));
  return std::nullopt;
}

inline std::optional<ConcreteAtlas> catalog_atlas(const std::string& name) {
  std::smatch m;
  static const std::regex full(R"(full([1-3]))"), group(R"(group([1-4]))");
  if (std::regex_match(name, m, full)) return full_atlas_example(std::stoul(m[1].str()));
  if (std::regex_match(name, m, group)) return group_atlas_example(std::stoul(m[1].str()));
  if (name == "chain") return chain_atlas();
  return std::nullopt;
}

}  // namespace atlaskit
