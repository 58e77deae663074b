#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "weylred/exponents.hpp"

namespace weylred::io {

using nlohmann::json;

/*
  One datum document drives every command:

  {
    "group":      {"series": "A", "rank": 3},
    "theta_M":    [1, 3],                       // 1-based simple-root indices
    "labels":     ["sigma"],                    // optional, default ["sigma"]
    "base_label": "sigma",                      // optional, default first label
    "action":     {"kind": "trivial"},          // "trivial" | "det" | "piece_perm"
                                                // | {"kind": "table", "table": [[..], ..]}
    "twist":      {"re": ["1/2"], "im": ["0"]}, // rationals as "p/q" strings
    "red_points": {"default": ["1"]},           // or {"orbits": [{"ray": [..],
                                                //    "values": ["1"]}, ...]}
    "mode":       "stabilizer"                  // optional; defaults by theta_M
  }

  Action tables are indexed by the canonical order of W_M (ascending ambient
  BFS ids, i.e. by length with lexicographic word tie-break); `relative`
  prints that order. Torsion entries are reduced mod 1 on load.
*/

struct LoadedDatum {
  std::shared_ptr<rootsys::RootSystem> rs;
  std::shared_ptr<rootsys::WeylGroup> W;
  std::shared_ptr<inertial::InertialDatum> datum;
  bool red_covers_all_orbits = true; // explicit values (or "default") everywhere
  std::string input_hash;
  std::vector<std::string> notices; // loud diagnostics for stderr
};

LoadedDatum load_datum(const json& doc, std::size_t cap);
json parse_json_file(const std::string& path); // validation_error on bad input

std::string fnv1a_hex(const std::string& bytes);

struct Report {
  json doc;         // {"command", "input_hash", "result", "summary"}
  std::string text; // deterministic human-readable rendering
};

std::string render(const Report& rep, const std::string& format); // "json" | "text"

// command surface (theta arguments are 1-based as on the CLI)
Report cmd_roots(const std::string& series, int rank, std::size_t cap);
Report cmd_relative(const std::string& series, int rank, const std::vector<int>& theta1,
                    std::size_t cap);
Report cmd_hypothesis(const LoadedDatum& ld, const std::vector<int>& levi1);
Report cmd_minimal_levi(const LoadedDatum& ld);
Report cmd_jh(const LoadedDatum& ld, const std::vector<int>& levi1);
Report cmd_locus(const LoadedDatum& ld);
Report cmd_clozel(const LoadedDatum& ld);

} // namespace weylred::io
