// Command-line front end for the selfsim library.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "selfsim/contraction.hpp"
#include "selfsim/dot.hpp"
#include "selfsim/pipeline.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/tree_action.hpp"

using namespace selfsim;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Writes to the named file, or to stdout when the name is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups generated by (3,2)-automata: numbering, classification and analysis"};
  app.require_subcommand(1);

  std::uint32_t number = 0;
  Budgets budgets;
  std::string out_path;

  auto* report_cmd = app.add_subcommand("report", "Analysis report for one automaton as JSON");
  report_cmd->add_option("n", number, "Automaton number")->required()->check(CLI::Range(1, 5832));
  report_cmd->add_option("--level", budgets.sf_level, "Deepest level for quotient orders")->capture_default_str();
  report_cmd->add_option("--radius", budgets.growth_radius, "Growth and relator radius")->capture_default_str();
  report_cmd->add_option("--spectrum-level", budgets.spectrum_level, "Spectrum level, 0 to skip")
      ->capture_default_str()
      ->check(CLI::Range(0, 9));
  report_cmd->add_option("--json", out_path, "Output file");

  unsigned jobs = default_jobs();
  std::uint64_t cap = 1000;
  auto* classify_cmd = app.add_subcommand("classify", "Minimal-symmetry classes of all 5832 automata");
  classify_cmd->add_option("--out", out_path, "CSV of number,representative,states");
  classify_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  classify_cmd->add_option("--cap", cap, "Enumeration cap for finite groups")->capture_default_str();

  std::size_t level = 7;
  bool raw = false, generators_only = false, deep = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum of the level operator");
  spectrum_cmd->add_option("n", number, "Automaton number")->required()->check(CLI::Range(1, 5832));
  spectrum_cmd->add_option("--level", level, "Tree level")->capture_default_str();
  spectrum_cmd->add_flag("--raw", raw, "Write eigenvalues instead of the histogram");
  spectrum_cmd->add_flag("--generators-only", generators_only, "Average over generators without inverses");
  spectrum_cmd->add_flag("--deep", deep, "Allow level 9");
  spectrum_cmd->add_option("--out", out_path, "CSV output file");

  std::string kind;
  std::size_t dot_level = 3;
  auto* dot_cmd = app.add_subcommand("dot", "Graphviz output");
  dot_cmd->add_option("kind", kind, "moore, schreier or tile")
      ->required()
      ->check(CLI::IsMember({"moore", "schreier", "tile"}));
  dot_cmd->add_option("n", number, "Automaton number")->required()->check(CLI::Range(1, 5832));
  dot_cmd->add_option("--level", dot_level, "Tree level")->capture_default_str();
  dot_cmd->add_option("--out", out_path, "Output file");

  std::string word_text;
  auto* relator_cmd = app.add_subcommand("check-relator", "Decide whether a word is the identity");
  relator_cmd->add_option("n", number, "Automaton number")->required()->check(CLI::Range(1, 5832));
  relator_cmd->add_option("word", word_text, "Word such as \"[a,b]^2\"")->required();

  std::string fixture_path;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Fixture tables");
  fixtures_cmd->require_subcommand(1);
  auto* verify_cmd = fixtures_cmd->add_subcommand("verify", "Recompute every fixture fact");
  verify_cmd->add_option("path", fixture_path, "Fixture JSON file")->required();
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bool quiet = false;
  verify_cmd->add_flag("--quiet", quiet, "Print only failures and the summary");

  auto* dual_cmd = app.add_subcommand("dual", "Dual automaton");
  dual_cmd->add_option("n", number, "Automaton number")->required()->check(CLI::Range(1, 5832));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*report_cmd) {
      budgets.relator_radius = budgets.growth_radius;
      const auto r = report(number, budgets);
      Output out(out_path);
      out.stream() << to_json(r).dump(2) << '\n';
      return kOk;
    }

    if (*classify_cmd) {
      const ClassTable table = classify_all(jobs);
      if (!out_path.empty()) {
        Output out(out_path);
        out.stream() << "number,representative,states\n";
        for (std::uint32_t n = 1; n <= 5832; ++n)
          out.stream() << n << ',' << table.rep(n) << ',' << table.reduced_state_count.at(table.rep(n)) << '\n';
      }
      std::cout << to_json(summarize(table, cap, jobs)).dump(2) << '\n';
      return kOk;
    }

    if (*spectrum_cmd) {
      if (level > 9 || (level == 9 && !deep)) {
        std::cerr << "level " << level << " needs --deep (and at most 9)\n";
        return kUsage;
      }
      const auto r = level_spectrum(decode_number(number), level, !generators_only);
      Output out(out_path);
      if (raw)
        write_eigenvalues_csv(out.stream(), r);
      else
        write_histogram_csv(out.stream(), r.histogram);
      return kOk;
    }

    if (*dot_cmd) {
      const Automaton a = decode_number(number);
      Output out(out_path);
      const std::string name = kind + "_" + std::to_string(number);
      if (kind == "moore") {
        write_moore_dot(out.stream(), a, name);
      } else if (kind == "schreier") {
        write_schreier_dot(out.stream(), a, schreier_level_graph(a, dot_level), name);
      } else {
        try {
          write_tile_dot(out.stream(), a, tile_graph(a, dot_level), name);
        } catch (const NotContracting& e) {
          std::cerr << number << ": " << e.what() << '\n';
          return kFail;
        }
      }
      return kOk;
    }

    if (*relator_cmd) {
      const Automaton a = decode_number(number);
      GenWord w;
      try {
        w = parse_word(word_text, a.state_count());
      } catch (const WordSyntaxError& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
      }
      const bool id = verify_relator(a, w);
      std::cout << format_word(w) << (id ? " = 1" : " != 1") << '\n';
      return id ? kOk : kFail;
    }

    if (*verify_cmd) {
      FixtureSet f;
      try {
        f = load_fixtures(fixture_path);
      } catch (const FixtureError& e) {
        std::cerr << fixture_path << ": " << e.what() << '\n';
        return kUsage;
      }
      const auto verdicts = verify_fixtures(f, budgets, jobs);
      std::size_t pass = 0, fail = 0, skip = 0;
      for (const auto& v : verdicts) {
        (v.status == FactStatus::Pass ? pass : v.status == FactStatus::Fail ? fail : skip) += 1;
        if (quiet && v.status != FactStatus::Fail) continue;
        std::cout << to_string(v.status) << ' ' << v.fact;
        if (!v.detail.empty()) std::cout << " (" << v.detail << ')';
        std::cout << '\n';
      }
      std::cout << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
      return fail ? kFail : kOk;
    }

    if (*dual_cmd) {
      const Automaton a = decode_number(number);
      const auto d = dual(a);
      if (!d) {
        std::cout << number << " has no invertible dual\n";
        return kFail;
      }
      for (const auto& line : d->recursion_lines(a.labels())) std::cout << line << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
