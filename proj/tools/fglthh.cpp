// fglthh: batch front end for the structure-map, sigma and cohomology tables.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fglthh/errors.hpp"
#include "fglthh/report.hpp"

using namespace fglthh;

namespace {

constexpr int kOk = 0;
constexpr int kContract = 1;
constexpr int kUsage = 2;

struct Options {
  std::string flavor = "mu-moving";
  std::string format = "text";
  std::string coalgebra = "C";
  long prime = 2;
  int truncation = 12;
  std::int64_t max_degree = -1;
  int max_n = -1;
  std::string output;
  bool unsafe = false;
  std::int64_t max_weight = 8;
  int max_q = 3;
};

void common_flags(CLI::App* cmd, Options& o, bool with_flavor) {
  if (with_flavor)
    cmd->add_option("--flavor", o.flavor, "mu-moving, mu-split or bp")
        ->check(CLI::IsMember({"mu-moving", "mu-split", "bp"}));
  cmd->add_option("--prime", o.prime, "prime for bp (2, 3 or 5)");
  cmd->add_option("--truncation", o.truncation, "truncation bound N for MU (weights <= N)");
  cmd->add_option("--format", o.format, "json, tex or text")->check(CLI::IsMember({"json", "tex", "text"}));
  cmd->add_option("--output", o.output, "write to a file instead of stdout");
  cmd->add_flag("--unsafe-large-prime", o.unsafe, "allow primes above 5");
}

RunConfig to_config(const std::string& command, const Options& o) {
  RunConfig c;
  c.command = command;
  c.flavor = parse_flavor(o.flavor);
  c.prime = o.prime;
  c.truncation = o.truncation;
  if (o.max_degree >= 0) c.max_degree = o.max_degree;
  if (o.max_n >= 0) c.max_n = o.max_n;
  c.format = parse_format(o.format);
  c.output = o.output;
  c.unsafe_large_prime = o.unsafe;
  c.coalgebra = o.coalgebra == "B" ? Coalgebra::B : o.coalgebra == "T" ? Coalgebra::T : Coalgebra::C;
  c.max_weight = o.max_weight;
  c.max_q = o.max_q;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal group laws, Hopf algebroids and the sigma-cohomology of THH(MU) and THH(BP)"};
  app.require_subcommand(1, 1);
  Options o;

  auto* sm = app.add_subcommand("structure-maps", "right unit, conjugation, coproduct and moving coordinates");
  common_flags(sm, o, true);
  sm->add_option("--max-n", o.max_n, "largest index to print");

  auto* sg = app.add_subcommand("sigma", "sigma on the polynomial and exterior generators");
  common_flags(sg, o, true);
  sg->add_option("--max-n", o.max_n, "largest index to print");

  auto* co = app.add_subcommand("cohomology", "cohomology groups with generators");
  common_flags(co, o, true);
  co->add_option("--max-degree", o.max_degree, "largest internal degree");

  auto* bt = app.add_subcommand("bar-tor", "Tor of the coordinate algebras via the bar complex");
  common_flags(bt, o, false);
  bt->add_option("--coalgebra", o.coalgebra, "C, B or T")->check(CLI::IsMember({"C", "B", "T"}));
  bt->add_option("--max-weight", o.max_weight, "largest weight (<= 8)");
  bt->add_option("--max-q", o.max_q, "largest homological degree (<= 3)");

  auto* dr = app.add_subcommand("de-rham", "de Rham cohomology and the inclusions through THH(MU)");
  common_flags(dr, o, false);
  dr->add_option("--max-degree", o.max_degree, "largest internal degree");

  auto* vf = app.add_subcommand("verify", "run the invariant suite");
  common_flags(vf, o, true);
  vf->add_option("--max-degree", o.max_degree, "largest internal degree");
  vf->add_option("--max-n", o.max_n, "largest index for the p-typical checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    config = to_config(command, o);
    config.validate();
  } catch (const Error& e) {
    std::cerr << "fglthh: " << e.what() << "\n";
    return kUsage;
  }

  Json doc;
  try {
    doc = build_report(config);
  } catch (const DomainError& e) {
    std::cerr << "fglthh: " << e.what() << "\n";
    return kUsage;
  } catch (const TruncationError& e) {
    std::cerr << "fglthh: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "fglthh: contract violation: " << e.what() << "\n";
    return kContract;
  }

  const std::string text = render(doc, config.format);
  if (config.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(config.output, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "fglthh: cannot write " << config.output << "\n";
      return kUsage;
    }
  }

  if (doc.contains("ok") && !doc["ok"].get<bool>()) {
    if (doc.contains("checks"))
      for (const auto& c : doc["checks"])
        if (!c["ok"].get<bool>())
          std::cerr << "fglthh: failed: " << c["name"].get<std::string>() << ": " << c.value("detail", "") << "\n";
    return kContract;
  }
  return kOk;
}
