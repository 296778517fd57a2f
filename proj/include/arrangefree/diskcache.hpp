#pragma once

#include <filesystem>
#include <fstream>

#include "arrangefree/report.hpp"

namespace arrangefree {

// On-disk lattice store, one JSON file per arrangement digest. Entries are
// verified on load: structural sizes, mu(V) = 1, each level's first flat
// recomputed from its atoms, and the Mobius recursion re-checked at the top.
// Anything inconsistent is discarded so a stale cache can only cost time.
class DiskCache {
 public:
  explicit DiskCache(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path path_for(const Arrangement& a) const {
    return std::filesystem::path(dir_) / (arrangement_digest(a) + ".lattice.json");
  }

  std::shared_ptr<const IntersectionLattice> load(const Arrangement& a) const {
    std::ifstream in(path_for(a));
    if (!in) return nullptr;
    json j;
    try {
      in >> j;
    } catch (...) {
      return nullptr;
    }
    try {
      if (j.at("key").get<std::string>() != a.key()) return nullptr;
      auto lat = std::make_shared<IntersectionLattice>();
      lat->ambient_dim = j.at("ambient_dim").get<int>();
      lat->rank = j.at("rank").get<int>();
      lat->num_hyperplanes = j.at("num_hyperplanes").get<int>();
      for (const auto& lvl : j.at("levels")) {
        std::vector<LatticeFlat> level;
        for (const auto& fj : lvl) {
          LatticeFlat lf;
          lf.flat = flat_from_json(fj.at("flat"));
          lf.atoms = fj.at("atoms").get<std::vector<int>>();
          lf.atom_bits = make_bits(lf.atoms, a.size());
          lf.mu = parse_int(fj.at("mu").get<std::string>());
          level.push_back(std::move(lf));
        }
        lat->levels.push_back(std::move(level));
      }
      if (!verify(a, *lat)) return nullptr;
      return lat;
    } catch (...) {
      return nullptr;
    }
  }

  void store(const Arrangement& a, const IntersectionLattice& lat) const {
    json levels = json::array();
    for (const auto& lvl : lat.levels) {
      json level = json::array();
      for (const auto& lf : lvl)
        level.push_back(json{{"flat", flat_to_json(lf.flat)},
                             {"atoms", lf.atoms},
                             {"mu", lf.mu.get_str()}});
      levels.push_back(std::move(level));
    }
    json j{{"key", a.key()},
           {"ambient_dim", lat.ambient_dim},
           {"rank", lat.rank},
           {"num_hyperplanes", lat.num_hyperplanes},
           {"levels", levels}};
    auto final_path = path_for(a);
    auto tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, final_path);
  }

 private:
  static bool verify(const Arrangement& a, const IntersectionLattice& lat) {
    if (lat.ambient_dim != a.ambient_dim() || lat.num_hyperplanes != a.size()) return false;
    if (lat.levels.empty() || lat.levels[0].size() != 1) return false;
    if (lat.levels[0][0].mu != 1 || lat.levels[0][0].flat.codim() != 0) return false;
    if (static_cast<int>(lat.levels.size()) != lat.rank + 1) return false;
    if (lat.rank != a.rank()) return false;
    if (!a.empty() && static_cast<int>(lat.levels[1].size()) != a.size()) return false;
    // spot check: first flat of each level really is the intersection of its atoms
    for (size_t k = 1; k < lat.levels.size(); ++k) {
      if (lat.levels[k].empty()) return false;
      const auto& lf = lat.levels[k][0];
      std::vector<std::vector<Int>> rows;
      for (int i : lf.atoms) {
        if (i < 0 || i >= a.size()) return false;
        rows.push_back(a[i].normal());
      }
      if (!(Flat::from_generators(a.ambient_dim(), rows) == lf.flat)) return false;
    }
    // spot check: Mobius recursion at the top flat
    const auto& top = lat.levels.back().front();
    Int acc = 0;
    for (size_t k = 0; k + 1 < lat.levels.size(); ++k)
      for (const auto& up : lat.levels[k])
        if (bits_subset(up.atom_bits, top.atom_bits)) acc += up.mu;
    if (lat.rank > 0 && top.mu != -acc) return false;
    return true;
  }

  std::string dir_;
};

}  // namespace arrangefree
