#include <set>
#include <numeric>
#include <sstream>

#include "weylred/io.hpp"

namespace weylred::io {

using hierarchy::HypothesisReport;
using inertial::InertialDatum;
using relweyl::LeviContext;
using rootsys::RootSystem;
using rootsys::WeylGroup;
using rootsys::Word;

namespace {

json j_rat(const Rat& r) { return r.str(); }

json j_qvec(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(j_rat(x));
  return a;
}

json j_coords(const rootsys::Coords& c) {
  json a = json::array();
  for (int x : c) a.push_back(x);
  return a;
}

json j_word(const Word& w) {
  json a = json::array();
  for (auto i : w) a.push_back((int)i + 1);
  return a;
}

json j_theta(const std::vector<int>& theta) {
  json a = json::array();
  for (int i : theta) a.push_back(i + 1);
  return a;
}

json j_imat(const IMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(i, c));
    rows.push_back(row);
  }
  return rows;
}

json j_element(const WeylGroup& W, std::size_t id) {
  json e;
  e["id"] = id;
  e["word"] = j_word(W[id].word);
  return e;
}

json j_hypothesis(const InertialDatum& datum, const HypothesisReport& rep) {
  const auto& ctx = datum.levi();
  json r;
  r["theta_L"] = j_theta(rep.theta_L);
  r["cond_rank_one"] = rep.cond_rank_one;
  json off = json::array();
  for (int idx : rep.offending_roots) off.push_back(j_coords(ctx.relative_roots()[idx].ray));
  r["offending_roots"] = off;
  r["cond_r_group"] = rep.cond_r_group;
  json offe = json::array();
  for (std::size_t w : rep.offending_elements) offe.push_back(j_element(ctx.weyl(), w));
  r["offending_elements"] = offe;
  r["holds"] = rep.holds;
  return r;
}

Report finish(const std::string& command, const std::string& input_hash, json result,
              const std::string& summary, std::string text) {
  Report rep;
  rep.doc["command"] = command;
  rep.doc["input_hash"] = input_hash;
  rep.doc["result"] = std::move(result);
  rep.doc["summary"] = summary;
  rep.text = "weylred " + command + "  [input " + input_hash + "]\n" + std::move(text) +
             "summary: " + summary + "\n";
  return rep;
}

std::string hash_of_params(const json& params) { return fnv1a_hex(params.dump()); }

std::string theta_str(const std::vector<int>& theta) {
  if (theta.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(theta[i] + 1);
  }
  return s + "}";
}

std::vector<int> theta_from_1based(const RootSystem& rs, const std::vector<int>& theta1) {
  std::vector<int> theta;
  for (int i : theta1) {
    if (i < 1 || i > rs.rank())
      throw validation_error("simple-root index " + std::to_string(i) + " out of range for " +
                             rs.name());
    theta.push_back(i - 1);
  }
  rootsys::validate_theta(rs, theta);
  std::sort(theta.begin(), theta.end());
  return theta;
}

} // namespace

std::string render(const Report& rep, const std::string& format) {
  if (format == "json") return rep.doc.dump(2) + "\n";
  if (format == "text") return rep.text;
  throw validation_error("unknown format '" + format + "' (expected json or text)");
}

Report cmd_roots(const std::string& series, int rank, std::size_t cap) {
  auto rs = RootSystem::build(series, rank);
  auto W = WeylGroup::enumerate(rs, cap);
  std::vector<int> all(rs.rank());
  std::iota(all.begin(), all.end(), 0);
  auto w0 = rootsys::longest_element(rs, all);

  json result;
  result["series"] = series;
  result["rank"] = rank;
  json pos = json::array();
  for (int id = 0; id < rs.num_positive(); ++id) pos.push_back(j_coords(rs.roots()[id]));
  result["positive_roots"] = pos;
  result["num_positive"] = rs.num_positive();
  result["weyl_order"] = W.size();
  result["w0_word"] = j_word(w0.word);

  std::ostringstream text;
  text << "root system " << rs.name() << "\n";
  text << "positive roots (" << rs.num_positive() << "):\n";
  for (int id = 0; id < rs.num_positive(); ++id) {
    text << "  [";
    for (int k = 0; k < rs.rank(); ++k) text << (k ? " " : "") << rs.roots()[id][k];
    text << "]\n";
  }
  text << "|W| = " << W.size() << "\n";
  text << "w0 word: ";
  for (std::size_t k = 0; k < w0.word.size(); ++k) text << (k ? " " : "") << (int)w0.word[k] + 1;
  text << "\n";

  std::string summary = rs.name() + ": " + std::to_string(rs.num_positive()) +
                        " positive roots, |W| = " + std::to_string(W.size());
  json params{{"command", "roots"}, {"series", series}, {"rank", rank}};
  return finish("roots", hash_of_params(params), result, summary, text.str());
}

Report cmd_relative(const std::string& series, int rank, const std::vector<int>& theta1,
                    std::size_t cap) {
  auto rs = RootSystem::build(series, rank);
  auto W = WeylGroup::enumerate(rs, cap);
  auto theta = theta_from_1based(rs, theta1);
  auto ctx = LeviContext::make(rs, W, theta);
  auto dec = ctx.decompose();

  json result;
  result["theta_M"] = j_theta(theta);
  json rels = json::array();
  for (int r = 0; r < (int)ctx.relative_roots().size(); ++r) {
    const auto& rr = ctx.relative_roots()[r];
    json e;
    e["ray"] = j_coords(rr.ray);
    e["restriction"] = j_qvec(rr.restriction);
    e["lift_count"] = rr.lifts.size();
    e["divisible"] = rr.divisible;
    e["in_phi0"] = ctx.in_phi0(r);
    e["orbit"] = ctx.orbit_of(r);
    rels.push_back(e);
  }
  result["relative_roots"] = rels;
  result["phi0_count"] = ctx.phi0().size();
  json wm = json::array();
  for (std::size_t w : ctx.group()) wm.push_back(j_element(W, w));
  result["w_M"] = wm;
  result["w_M_order"] = ctx.group().size();
  result["w_M0_order"] = dec.w0.size();
  result["w_M1_order"] = dec.w1.size();

  std::ostringstream text;
  text << "relative structure of theta_M = " << theta_str(theta) << " in " << rs.name() << "\n";
  text << "positive relative roots (" << ctx.relative_roots().size() << "):\n";
  for (int r = 0; r < (int)ctx.relative_roots().size(); ++r) {
    const auto& rr = ctx.relative_roots()[r];
    text << "  ray [";
    for (int k = 0; k < rs.rank(); ++k) text << (k ? " " : "") << rr.ray[k];
    text << "]  lifts " << rr.lifts.size() << (ctx.in_phi0(r) ? "  in Phi_M^0" : "")
         << (rr.divisible ? "  divisible" : "") << "\n";
  }
  text << "|W_M| = " << ctx.group().size() << ", |W_M^0| = " << dec.w0.size()
       << ", |W_M^1| = " << dec.w1.size() << "\n";
  text << "W_M canonical order (action tables index this):\n";
  for (std::size_t w : ctx.group()) {
    text << "  id " << w << "  word";
    if (W[w].word.empty()) text << " (identity)";
    for (auto i : W[w].word) text << " " << (int)i + 1;
    text << "\n";
  }

  std::string summary = "|W_M| = " + std::to_string(ctx.group().size()) + ", |Phi_M^0| = " +
                        std::to_string(ctx.phi0().size()) + " of " +
                        std::to_string(ctx.relative_roots().size()) + " relative roots";
  json params{{"command", "relative"}, {"series", series}, {"rank", rank},
              {"theta", theta1}};
  return finish("relative", hash_of_params(params), result, summary, text.str());
}

Report cmd_hypothesis(const LoadedDatum& ld, const std::vector<int>& levi1) {
  auto theta_L = theta_from_1based(*ld.rs, levi1);
  auto rep = hierarchy::check_working_hypothesis(*ld.datum, theta_L);
  json result = j_hypothesis(*ld.datum, rep);

  std::ostringstream text;
  text << "working hypothesis at theta_L = " << theta_str(theta_L) << "\n";
  text << "  rank-one condition: " << (rep.cond_rank_one ? "holds" : "fails") << "\n";
  text << "  R-group condition:  " << (rep.cond_r_group ? "holds" : "fails") << "\n";
  std::string summary = std::string("hypothesis ") + (rep.holds ? "holds" : "fails") +
                        " at theta_L = " + theta_str(theta_L);
  return finish("hypothesis", ld.input_hash, result, summary, text.str());
}

Report cmd_minimal_levi(const LoadedDatum& ld) {
  auto ml = hierarchy::minimal_qualifying_levi(*ld.datum);
  json result;
  result["theta_L"] = j_theta(ml.theta_L);
  result["seed"] = j_theta(ml.seed);
  result["report"] = j_hypothesis(*ld.datum, ml.report);
  json rej = json::array();
  for (const auto& t : ml.rejected_below) rej.push_back(j_theta(t));
  result["rejected_below"] = rej;

  std::ostringstream text;
  text << "seed = " << theta_str(ml.seed) << "\n";
  text << "minimal qualifying Levi: theta_L = " << theta_str(ml.theta_L) << "\n";
  text << "maximal proper sub-Levis above the seed checked and failing: "
       << ml.rejected_below.size() << "\n";
  std::string summary = "theta_L = " + theta_str(ml.theta_L);
  return finish("minimal-levi", ld.input_hash, result, summary, text.str());
}

Report cmd_jh(const LoadedDatum& ld, const std::vector<int>& levi1) {
  auto theta_L = theta_from_1based(*ld.rs, levi1);
  auto jc = hierarchy::jh_count(*ld.datum, theta_L);
  json result;
  result["theta_L"] = j_theta(jc.theta_L);
  json pieces = json::array();
  for (const auto& pc : jc.per_piece) {
    json p;
    p["piece"] = j_theta(pc.piece);
    p["red_factor"] = pc.red_factor;
    p["r_factor"] = pc.r_factor;
    p["count"] = pc.count;
    pieces.push_back(p);
  }
  result["per_piece"] = pieces;
  result["total"] = jc.total;
  result["r_group_nontrivial"] = jc.r_group_nontrivial;
  result["r_group_product_pattern"] = jc.r_group_product_pattern;
  result["agrees_with_full_level"] = jc.agrees_with_full_level;

  std::ostringstream text;
  text << "constituent count at theta_L = " << theta_str(jc.theta_L) << "\n";
  for (const auto& pc : jc.per_piece)
    text << "  piece " << theta_str(pc.piece) << ": " << pc.red_factor << " x " << pc.r_factor
         << " = " << pc.count << "\n";
  text << "total = " << jc.total
       << (jc.agrees_with_full_level ? "  (level-independent)" : "  (level mismatch!)") << "\n";
  if (jc.r_group_nontrivial)
    text << "note: nontrivial R-group counted binarily per independent condition\n";
  std::string summary = "total = " + std::to_string(jc.total) + " at theta_L = " +
                        theta_str(jc.theta_L);
  return finish("jh", ld.input_hash, result, summary, text.str());
}

Report cmd_locus(const LoadedDatum& ld) {
  auto locus = hierarchy::reducibility_locus(*ld.datum);
  const auto& ctx = ld.datum->levi();
  json result;
  json hps = json::array();
  for (const auto& h : locus.hyperplanes) {
    json e;
    e["ray"] = j_coords(ctx.relative_roots()[h.rel_idx].ray);
    e["orbit"] = h.orbit;
    e["normal"] = j_qvec(h.normal);
    e["value"] = j_rat(h.value);
    hps.push_back(e);
  }
  result["hyperplanes"] = hps;
  json tors = json::array();
  for (const auto& tc : locus.torsion_conditions) {
    json e;
    e["element"] = j_element(ctx.weyl(), tc.element);
    e["system"] = j_imat(tc.system);
    tors.push_back(e);
  }
  result["torsion_conditions"] = tors;
  result["generic_witness"] = {{"re", j_qvec(locus.generic_witness.re)},
                               {"im", j_qvec(locus.generic_witness.im)}};
  result["witness_sample_index"] = locus.witness_sample_index;

  std::ostringstream text;
  text << "reducibility locus: " << locus.hyperplanes.size() << " hyperplane condition(s), "
       << locus.torsion_conditions.size() << " torsion condition(s)\n";
  text << "generic witness off the locus: re = [";
  for (std::size_t k = 0; k < locus.generic_witness.re.size(); ++k)
    text << (k ? " " : "") << locus.generic_witness.re[k].str();
  text << "], im = [";
  for (std::size_t k = 0; k < locus.generic_witness.im.size(); ++k)
    text << (k ? " " : "") << locus.generic_witness.im[k].str();
  text << "]\n";
  std::string summary = std::to_string(locus.hyperplanes.size()) + " hyperplanes + " +
                        std::to_string(locus.torsion_conditions.size()) +
                        " torsion conditions; complement nonempty";
  return finish("locus", ld.input_hash, result, summary, text.str());
}

Report cmd_clozel(const LoadedDatum& ld) {
  if (!ld.red_covers_all_orbits)
    throw validation_error(
        "special-exponent enumeration needs reducibility values for every orbit "
        "(the induction assumption); supply red_points explicitly");
  const auto& ctx = ld.datum->levi();
  std::map<int, std::vector<Rat>> table;
  {
    std::set<int> orbits;
    for (int r : ctx.phi0()) orbits.insert(ctx.orbit_of(r));
    for (int orbit : orbits) table[orbit] = ld.datum->red_values(orbit);
  }
  auto set = exponents::enumerate_special_exponents(ctx, table);

  json result;
  json conds = json::array();
  for (const auto& c : set.conditions) {
    json e;
    e["normal"] = j_qvec(c.normal);
    e["value"] = j_rat(c.value);
    e["from_r_group"] = c.from_r_group;
    if (c.rel_idx >= 0) e["ray"] = j_coords(ctx.relative_roots()[c.rel_idx].ray);
    conds.push_back(e);
  }
  result["conditions"] = conds;
  json reals = json::array();
  for (const auto& re : set.real_parts) {
    json e;
    e["x"] = j_qvec(re.x);
    e["conditions"] = re.conditions;
    reals.push_back(e);
  }
  result["real_parts"] = reals;
  json ims = json::array();
  for (const auto& im : set.im_parts) {
    json e;
    e["y"] = j_qvec(im.y);
    e["candidates"] = im.candidates;
    ims.push_back(e);
  }
  result["im_parts"] = ims;
  json certs = json::array();
  for (const auto& tc : set.torsion_certificates) {
    json e;
    e["candidate"] = tc.candidate;
    e["invariant_factors"] = tc.diag;
    certs.push_back(e);
  }
  result["torsion_certificates"] = certs;
  result["skipped_candidates"] = set.skipped_candidates;
  result["normalization"] = set.normalization_note;

  std::ostringstream text;
  text << "special exponents for theta_M = " << theta_str(ctx.theta_M()) << " in "
       << ld.rs->name() << "\n";
  text << "real parts (" << set.real_parts.size() << "):\n";
  for (const auto& re : set.real_parts) {
    text << "  [";
    for (std::size_t k = 0; k < re.x.size(); ++k) text << (k ? " " : "") << re.x[k].str();
    text << "]\n";
  }
  text << "torsion parts (" << set.im_parts.size() << "):\n";
  for (const auto& im : set.im_parts) {
    text << "  [";
    for (std::size_t k = 0; k < im.y.size(); ++k) text << (k ? " " : "") << im.y[k].str();
    text << "]\n";
  }
  text << "candidate R-groups skipped for free torsion directions: "
       << set.skipped_candidates.size() << "\n";
  std::string summary = std::to_string(set.real_parts.size()) + " real parts, " +
                        std::to_string(set.im_parts.size()) +
                        " torsion parts, all certificates full-rank";
  return finish("clozel", ld.input_hash, result, summary, text.str());
}

} // namespace weylred::io
