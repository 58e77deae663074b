#include <iostream>

#include "CLI11.hpp"

#include "weylred/io.hpp"

/*
  Exit codes: 0 success, 2 validation error (bad input, failed hypothesis,
  incomplete reducibility table), 3 enumeration cap exceeded.
*/

namespace {

struct Common {
  std::string format = "text";
  std::size_t cap = weylred::rootsys::WeylGroup::kDefaultCap;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--cap", common.cap,
                  "Weyl group enumeration cap (error code 3 when exceeded)")
      ->capture_default_str();
}

weylred::io::LoadedDatum load(const std::string& path, const Common& common) {
  auto doc = weylred::io::parse_json_file(path);
  auto ld = weylred::io::load_datum(doc, common.cap);
  for (const auto& n : ld.notices) std::cerr << n << "\n";
  return ld;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative Weyl group decompositions, R-group bookkeeping and "
               "reducibility criteria over exact rationals"};
  app.require_subcommand(1);

  Common common;
  std::string series;
  int rank = 0;
  std::vector<int> theta;
  std::vector<int> levi;
  std::string datum_path;

  auto* roots = app.add_subcommand("roots", "Positive roots, Weyl order and w0 of a type");
  roots->add_option("--type", series, "Series letter A..G")->required();
  roots->add_option("--rank", rank, "Rank")->required();
  add_common(roots, common);

  auto* relative = app.add_subcommand(
      "relative", "Relative roots, Phi_M^0 and the relative Weyl group of a Levi");
  relative->add_option("--type", series, "Series letter A..G")->required();
  relative->add_option("--rank", rank, "Rank")->required();
  relative->add_option("--theta", theta, "theta_M as 1-based indices (comma separated)")
      ->delimiter(',');
  add_common(relative, common);

  auto* hypothesis =
      app.add_subcommand("hypothesis", "Working-hypothesis report at a given Levi");
  hypothesis->add_option("--datum", datum_path, "Datum JSON file")->required();
  hypothesis->add_option("--levi", levi, "theta_L as 1-based indices")->delimiter(',');
  add_common(hypothesis, common);

  auto* minimal = app.add_subcommand("minimal-levi", "Smallest qualifying Levi for a datum");
  minimal->add_option("--datum", datum_path, "Datum JSON file")->required();
  add_common(minimal, common);

  auto* jh = app.add_subcommand("jh", "Constituent count via the product formula");
  jh->add_option("--datum", datum_path, "Datum JSON file")->required();
  jh->add_option("--levi", levi, "theta_L as 1-based indices")->delimiter(',');
  add_common(jh, common);

  auto* locus = app.add_subcommand("locus", "Reducibility locus of the twist family");
  locus->add_option("--datum", datum_path, "Datum JSON file")->required();
  add_common(locus, common);

  auto* clozel = app.add_subcommand(
      "clozel", "Finite special-exponent enumeration under the induction assumption");
  clozel->add_option("--datum", datum_path, "Datum JSON file")->required();
  add_common(clozel, common);

  CLI11_PARSE(app, argc, argv);

  try {
    weylred::io::Report rep;
    if (roots->parsed()) {
      rep = weylred::io::cmd_roots(series, rank, common.cap);
    } else if (relative->parsed()) {
      rep = weylred::io::cmd_relative(series, rank, theta, common.cap);
    } else if (hypothesis->parsed()) {
      auto ld = load(datum_path, common);
      rep = weylred::io::cmd_hypothesis(ld, levi);
    } else if (minimal->parsed()) {
      auto ld = load(datum_path, common);
      rep = weylred::io::cmd_minimal_levi(ld);
    } else if (jh->parsed()) {
      auto ld = load(datum_path, common);
      rep = weylred::io::cmd_jh(ld, levi);
    } else if (locus->parsed()) {
      auto ld = load(datum_path, common);
      rep = weylred::io::cmd_locus(ld);
    } else if (clozel->parsed()) {
      auto ld = load(datum_path, common);
      rep = weylred::io::cmd_clozel(ld);
    }
    std::cout << weylred::io::render(rep, common.format);
    return 0;
  } catch (const weylred::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weylred::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
