#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "weylred/io.hpp"

namespace weylred::io {

using inertial::InertialDatum;
using inertial::Phi0Mode;
using inertial::Twist;
using relweyl::LeviContext;
using rootsys::RootSystem;
using rootsys::WeylGroup;

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return std::string(buf);
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open datum file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw validation_error("datum file '" + path + "' is not valid JSON: " + e.what());
  }
  return doc;
}

namespace {

QVec parse_rat_list(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw validation_error(what + " must be an array of rational strings");
  QVec out;
  for (const auto& v : arr) {
    if (v.is_number_integer())
      out.push_back(Rat((long long)v.get<long long>()));
    else if (v.is_string())
      out.push_back(Rat::parse(v.get<std::string>()));
    else
      throw validation_error(what + " entries must be strings like \"1/2\" or integers");
  }
  return out;
}

std::vector<int> parse_theta(const json& arr, const RootSystem& rs, const std::string& what) {
  if (!arr.is_array()) throw validation_error(what + " must be an array of 1-based indices");
  std::vector<int> theta;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw validation_error(what + " entries must be integers");
    int i = v.get<int>();
    if (i < 1 || i > rs.rank())
      throw validation_error(what + " index " + std::to_string(i) + " out of range for " +
                             rs.name());
    theta.push_back(i - 1);
  }
  rootsys::validate_theta(rs, theta);
  std::sort(theta.begin(), theta.end());
  return theta;
}

std::vector<std::vector<int>> build_action(const json& spec, const LeviContext& ctx,
                                           const std::vector<std::string>& labels) {
  int nl = (int)labels.size();
  std::string kind = "trivial";
  if (spec.is_object() && spec.contains("kind")) kind = spec["kind"].get<std::string>();

  if (kind == "trivial") return inertial::trivial_action(ctx, nl);

  const auto& W = ctx.weyl();
  if (kind == "det") {
    if (nl != 2) throw validation_error("action kind 'det' needs exactly two labels");
    std::vector<std::vector<int>> out;
    for (std::size_t w : ctx.group()) {
      bool odd = W[w].length() % 2 == 1;
      out.push_back(odd ? std::vector<int>{1, 0} : std::vector<int>{0, 1});
    }
    return out;
  }
  if (kind == "piece_perm") {
    auto emb = exponents::signed_embedding(ctx, ctx.group());
    if ((int)emb.pieces.size() != nl)
      throw validation_error("action kind 'piece_perm' needs one label per piece of theta_M (" +
                             std::to_string(emb.pieces.size()) + ")");
    std::vector<std::vector<int>> out;
    for (const auto& [id, s] : emb.images) {
      (void)id;
      std::vector<int> perm(nl);
      for (int i = 1; i <= nl; ++i) perm[i - 1] = std::abs(s.image(i)) - 1;
      out.push_back(perm);
    }
    return out;
  }
  if (kind == "table") {
    if (!spec.contains("table") || !spec["table"].is_array())
      throw validation_error("action kind 'table' needs a 'table' array");
    std::vector<std::vector<int>> out;
    for (const auto& row : spec["table"]) {
      if (!row.is_array()) throw validation_error("action table rows must be arrays");
      std::vector<int> perm;
      for (const auto& v : row) perm.push_back(v.get<int>());
      out.push_back(std::move(perm));
    }
    return out;
  }
  throw validation_error("unknown action kind '" + kind + "'");
}

} // namespace

LoadedDatum load_datum(const json& doc, std::size_t cap) {
  if (!doc.is_object()) throw validation_error("datum document must be a JSON object");
  if (!doc.contains("group") || !doc["group"].is_object())
    throw validation_error("datum needs a 'group' object with series and rank");
  const auto& g = doc["group"];
  if (!g.contains("series") || !g.contains("rank"))
    throw validation_error("'group' needs 'series' and 'rank'");

  LoadedDatum ld;
  ld.input_hash = fnv1a_hex(doc.dump());
  ld.rs = std::make_shared<RootSystem>(
      RootSystem::build(g["series"].get<std::string>(), g["rank"].get<int>()));
  ld.W = std::make_shared<WeylGroup>(WeylGroup::enumerate(*ld.rs, cap));

  std::vector<int> theta_M;
  if (doc.contains("theta_M")) theta_M = parse_theta(doc["theta_M"], *ld.rs, "theta_M");
  LeviContext ctx = LeviContext::make(*ld.rs, *ld.W, theta_M);

  std::vector<std::string> labels{"sigma"};
  if (doc.contains("labels")) {
    labels.clear();
    for (const auto& l : doc["labels"]) labels.push_back(l.get<std::string>());
  }
  int base = 0;
  if (doc.contains("base_label")) {
    auto it = std::find(labels.begin(), labels.end(), doc["base_label"].get<std::string>());
    if (it == labels.end()) throw validation_error("base_label is not among the labels");
    base = (int)(it - labels.begin());
  }

  auto action = build_action(doc.contains("action") ? doc["action"] : json(), ctx, labels);

  Twist twist;
  twist.re.assign(ctx.dim(), Rat(0));
  twist.im.assign(ctx.dim(), Rat(0));
  if (doc.contains("twist")) {
    const auto& t = doc["twist"];
    if (t.contains("re")) twist.re = parse_rat_list(t["re"], "twist.re");
    if (t.contains("im")) twist.im = parse_rat_list(t["im"], "twist.im");
  }

  std::map<int, std::vector<Rat>> red;
  bool covers_all = false;
  if (doc.contains("red_points")) {
    const auto& rp = doc["red_points"];
    if (rp.contains("default")) {
      QVec vals = parse_rat_list(rp["default"], "red_points.default");
      std::set<int> orbits;
      for (int r : ctx.phi0()) orbits.insert(ctx.orbit_of(r));
      for (int orbit : orbits) red[orbit] = vals;
      covers_all = true;
    } else if (rp.contains("orbits")) {
      for (const auto& entry : rp["orbits"]) {
        if (!entry.contains("ray") || !entry.contains("values"))
          throw validation_error("red_points orbit entries need 'ray' and 'values'");
        rootsys::Coords ray;
        for (const auto& v : entry["ray"]) ray.push_back(v.get<int>());
        if ((int)ray.size() != ld.rs->rank())
          throw validation_error("red_points ray has wrong length");
        auto idx = ctx.find_ray(ray);
        if (!idx) {
          for (auto& v : ray) v = -v;
          idx = ctx.find_ray(ray);
        }
        if (!idx) throw validation_error("red_points ray is not a relative root");
        red[ctx.orbit_of(*idx)] = parse_rat_list(entry["values"], "red_points values");
      }
      std::set<int> orbits;
      for (int r : ctx.phi0()) orbits.insert(ctx.orbit_of(r));
      covers_all = true;
      for (int orbit : orbits)
        if (!red.count(orbit)) covers_all = false;
    } else {
      throw validation_error("red_points needs either 'default' or 'orbits'");
    }
  }

  std::optional<Phi0Mode> mode;
  if (doc.contains("mode")) {
    std::string m = doc["mode"].get<std::string>();
    if (m == "principal")
      mode = Phi0Mode::Principal;
    else if (m == "stabilizer")
      mode = Phi0Mode::Stabilizer;
    else
      throw validation_error("mode must be \"principal\" or \"stabilizer\"");
  }

  ld.datum = std::make_shared<InertialDatum>(InertialDatum::make(
      std::move(ctx), labels, action, base, twist, red, mode));
  ld.red_covers_all_orbits = covers_all || ld.datum->defaulted_orbits().empty();

  for (int orbit : ld.datum->defaulted_orbits())
    ld.notices.push_back("notice: red_points for orbit " + std::to_string(orbit) +
                         " defaulted to {1}; supply red_points to silence this");
  if (ld.datum->mode_defaulted())
    ld.notices.push_back(std::string("notice: Phi_sigma^0 mode defaulted to \"") +
                         inertial::mode_name(ld.datum->mode()) +
                         "\" (theta_M " + (theta_M.empty() ? "empty" : "nonempty") + ")");
  return ld;
}

} // namespace weylred::io
