#include "treegh/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "text_lines.hpp"
#include "treegh/errors.hpp"
#include "treegh/gh.hpp"
#include "treegh/hardness.hpp"
#include "treegh/merge_tree.hpp"
#include "treegh/metric_tree.hpp"

namespace treegh::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

const char* branch_name(DecisionBranch b) {
  switch (b) {
    case DecisionBranch::kLong:
      return "long";
    case DecisionBranch::kTrimmed:
      return "trimmed";
    case DecisionBranch::kSkipTrim:
      return "skip-trim";
  }
  return "?";
}

std::vector<std::int64_t> parse_values(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ValidationError("bad integer '" + item + "' in value list");
    }
  }
  if (out.empty()) throw ValidationError("empty value list");
  return out;
}

// Shared output settings.
struct Format {
  std::optional<int> decimal;
  bool json = false;

  std::string num(const Rational& r) const { return decimal ? r.decimal(*decimal) : r.str(); }
};

// key/value report printed either as "key: value" lines or as one JSON object.
class Report {
 public:
  explicit Report(const Format& fmt) : fmt_(fmt) {}
  void num(const std::string& key, const Rational& r) { add(key, fmt_.num(r)); }
  void text(const std::string& key, const std::string& v) { add(key, v); }
  void raw(const std::string& key, json v, const std::string& plain) {
    obj_[key] = std::move(v);
    lines_.push_back(key + ": " + plain);
  }
  void print(std::ostream& out) const {
    if (fmt_.json) {
      out << obj_.dump(2) << '\n';
    } else {
      for (const auto& l : lines_) out << l << '\n';
    }
  }
  json& object() { return obj_; }

 private:
  void add(const std::string& key, const std::string& v) {
    obj_[key] = v;
    lines_.push_back(key + ": " + v);
  }
  const Format& fmt_;
  json obj_ = json::object();
  std::vector<std::string> lines_;
};

json map_json(const TreeMap& m, const Format& fmt) {
  json arr = json::array();
  for (std::size_t v = 0; v < m.images.size(); ++v) {
    arr.push_back({{"node", v}, {"image", m.images[v].node}, {"height", fmt.num(m.images[v].height)}});
  }
  return arr;
}

std::string map_lines(const TreeMap& alpha, const TreeMap& beta, const Format& fmt) {
  std::ostringstream os;
  for (std::size_t v = 0; v < alpha.images.size(); ++v) {
    os << "alpha " << v << ' ' << alpha.images[v].node << ' ' << fmt.num(alpha.images[v].height) << '\n';
  }
  for (std::size_t v = 0; v < beta.images.size(); ++v) {
    os << "beta " << v << ' ' << beta.images[v].node << ' ' << fmt.num(beta.images[v].height) << '\n';
  }
  return os.str();
}

}  // namespace

std::pair<TreeMap, TreeMap> parse_maps(std::string_view text, int f_size, int g_size) {
  std::vector<std::optional<MergePoint>> a(f_size);
  std::vector<std::optional<MergePoint>> b(g_size);
  for (const auto& line : detail::content_lines(text)) {
    const std::string& head = line.fields.front();
    if (!head.empty() && head.back() == ':') continue;
    const std::string where = "line " + std::to_string(line.number) + ": ";
    if ((head != "alpha" && head != "beta") || line.fields.size() != 4) {
      throw ValidationError(where + "expected 'alpha|beta node image-node height'");
    }
    auto& slots = head == "alpha" ? a : b;
    const int v = detail::parse_int(line.fields[1], line.number);
    if (v < 0 || v >= static_cast<int>(slots.size())) throw ValidationError(where + "source node out of range");
    if (slots[v]) throw ValidationError(where + head + " image of node " + std::to_string(v) + " given twice");
    MergePoint p;
    p.node = detail::parse_int(line.fields[2], line.number);
    try {
      p.height = Rational::parse(line.fields[3]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    slots[v] = p;
  }
  auto collect = [](const std::vector<std::optional<MergePoint>>& slots, const char* name) {
    TreeMap m;
    for (std::size_t v = 0; v < slots.size(); ++v) {
      if (!slots[v]) throw ValidationError(std::string(name) + " has no image for node " + std::to_string(v));
      m.images.push_back(*slots[v]);
    }
    return m;
  };
  return {collect(a, "alpha"), collect(b, "beta")};
}

std::string write_maps(const TreeMap& alpha, const TreeMap& beta) { return map_lines(alpha, beta, Format{}); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gromov-Hausdorff and interleaving distances for metric and merge trees", "treegh"};
  app.require_subcommand(1);
  Format fmt;
  int digits = -1;
  app.add_option("--decimal", digits, "Render numbers with this many decimal digits instead of p/q")->check(CLI::NonNegativeNumber);

  std::string a_path;
  std::string b_path;
  std::string mode = "diameter";
  std::string eps_text;
  std::string maps_path;
  int root = -1;
  bool json_out = false;

  auto* gh = app.add_subcommand("gh", "Approximate the GH distance between two metric trees");
  gh->add_option("t1", a_path, "First metric-tree file")->required();
  gh->add_option("t2", b_path, "Second metric-tree file")->required();
  gh->add_option("--mode", mode, "Root choices: diameter or all")->check(CLI::IsMember({"all", "diameter"}));
  gh->add_flag("--json", json_out, "JSON output");

  auto* inter = app.add_subcommand("interleave", "Approximate the interleaving distance of two merge trees");
  inter->add_option("f", a_path, "First merge-tree file")->required();
  inter->add_option("g", b_path, "Second merge-tree file")->required();
  inter->add_flag("--json", json_out, "JSON output");

  auto* dec = app.add_subcommand("decide", "Decide whether two merge trees are eps-interleaved");
  dec->add_option("f", a_path, "First merge-tree file")->required();
  dec->add_option("g", b_path, "Second merge-tree file")->required();
  dec->add_option("--eps", eps_text, "Threshold as p/q")->required();
  dec->add_flag("--json", json_out, "JSON output");

  auto* cand = app.add_subcommand("candidates", "List the candidate values of the binary search");
  cand->add_option("f", a_path, "First merge-tree file")->required();
  cand->add_option("g", b_path, "Second merge-tree file")->required();
  cand->add_flag("--json", json_out, "JSON output");

  auto* mt = app.add_subcommand("merge-tree", "Merge tree of the distance-to-root function");
  mt->add_option("tree", a_path, "Metric-tree file")->required();
  mt->add_option("--root", root, "Root node")->required();

  std::string x_text;
  int parts = 0;
  std::string lambda_text = "7";
  std::string rho_text = "1/2";
  std::string prefix;
  bool from_three = false;
  auto* gen = app.add_subcommand("gen-hard", "Write a hard metric-tree pair for a balanced-partition instance");
  gen->add_option("--x", x_text, "Comma-separated positive integers")->required();
  gen->add_option("--m", parts, "Number of parts (ignored with --from-3partition)");
  gen->add_flag("--from-3partition", from_three, "Treat --x as a 3-partition instance and transform it first");
  gen->add_option("--lambda", lambda_text, "Star edge length, > 6");
  gen->add_option("--rho", rho_text, "Spur length, in (0, lambda - 6)");
  gen->add_option("--out-prefix", prefix, "Output prefix")->required();

  auto* ver = app.add_subcommand("verify", "Check a pair of maps for compatibility");
  ver->add_option("f", a_path, "First merge-tree file")->required();
  ver->add_option("g", b_path, "Second merge-tree file")->required();
  ver->add_option("maps", maps_path, "Map file")->required();
  ver->add_option("--eps", eps_text, "Compatibility bound as p/q")->required();
  ver->add_flag("--json", json_out, "JSON output");

  int limit = -1;
  auto* orc = app.add_subcommand("oracle", "Exact brute-force values for tiny inputs");
  orc->require_subcommand(1);
  auto* orc_gh = orc->add_subcommand("gh", "GH distance between the vertex sets of two metric trees");
  orc_gh->add_option("t1", a_path)->required();
  orc_gh->add_option("t2", b_path)->required();
  orc_gh->add_option("--max-size", limit, "Node limit per tree (default 6)");
  orc_gh->add_flag("--json", json_out, "JSON output");
  auto* orc_il = orc->add_subcommand("interleave", "Interleaving distance of two merge trees");
  orc_il->add_option("f", a_path)->required();
  orc_il->add_option("g", b_path)->required();
  orc_il->add_option("--max-leaves", limit, "Leaf limit per tree (default 5)");
  orc_il->add_flag("--json", json_out, "JSON output");

  for (auto* sub : {gh, inter, dec, cand, mt, gen, ver, orc_gh, orc_il}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (digits >= 0) fmt.decimal = digits;
  fmt.json = json_out;

  try {
    Report rep(fmt);
    if (*gh) {
      const MetricTree t1 = parse_tree(read_file(a_path));
      const MetricTree t2 = parse_tree(read_file(b_path));
      const GhEstimate est = approx_gh(t1, t2, mode == "all" ? GhMode::kAllPairs : GhMode::kDiameter);
      rep.num("delta_hat", est.delta_hat);
      rep.num("certified", est.certified);
      rep.num("lower_bound", est.lower_bound);
      rep.num("upper_bound", est.upper_bound);
      rep.raw("best_pair", json::array({est.best_pair.first, est.best_pair.second}),
              std::to_string(est.best_pair.first) + " " + std::to_string(est.best_pair.second));
      rep.num("c_factor", est.c_factor);
      rep.text("mode", mode);
      rep.raw("pairs_evaluated", est.pairs_evaluated, std::to_string(est.pairs_evaluated));
      rep.print(out);
    } else if (*inter) {
      const MergeTree f = parse_merge_tree(read_file(a_path));
      const MergeTree g = parse_merge_tree(read_file(b_path));
      const InterleaveResult r = interleaving_distance(f, g);
      rep.num("pivot", r.pivot);
      rep.num("certified", r.certified);
      rep.num("factor", r.factor);
      rep.text("branch", branch_name(r.branch));
      rep.raw("probes", r.probes, std::to_string(r.probes));
      if (fmt.json) {
        rep.object()["alpha"] = map_json(r.alpha, fmt);
        rep.object()["beta"] = map_json(r.beta, fmt);
        rep.print(out);
      } else {
        rep.print(out);
        out << map_lines(r.alpha, r.beta, fmt);
      }
    } else if (*dec) {
      const MergeTree f = parse_merge_tree(read_file(a_path));
      const MergeTree g = parse_merge_tree(read_file(b_path));
      const Rational eps = Rational::parse(eps_text);
      if (eps.sign() < 0) throw ValidationError("--eps must be non-negative");
      const DecisionOutcome o = decide(f, g, eps);
      rep.text("verdict", o.yes() ? "YES" : "NO");
      rep.text("branch", branch_name(o.branch));
      if (o.yes()) {
        rep.num("certified", o.certified);
        rep.num("factor", o.factor);
      }
      rep.print(out);
    } else if (*cand) {
      const MergeTree f = parse_merge_tree(read_file(a_path));
      const MergeTree g = parse_merge_tree(read_file(b_path));
      const auto values = candidate_values(f, g).values;
      if (fmt.json) {
        json arr = json::array();
        for (const auto& v : values) arr.push_back(fmt.num(v));
        out << json{{"candidates", arr}}.dump(2) << '\n';
      } else {
        for (const auto& v : values) out << fmt.num(v) << '\n';
      }
    } else if (*mt) {
      const MetricTree t = parse_tree(read_file(a_path));
      out << write_merge_tree(build_merge_tree(t, root));
    } else if (*gen) {
      const auto xs = parse_values(x_text);
      BalPartInstance inst;
      if (from_three) {
        inst = balpart_from_3partition(xs);
      } else {
        if (parts < 1) throw ValidationError("--m is required and must be positive");
        inst = BalPartInstance{xs, parts};
      }
      const HardPair pair = build_hard_pair(inst, Rational::parse(lambda_text), Rational::parse(rho_text));
      write_file(prefix + ".t1.tree", write_tree(pair.t1));
      write_file(prefix + ".t2.tree", write_tree(pair.t2));
      std::ostringstream meta;
      meta << "x: ";
      for (std::size_t i = 0; i < inst.values.size(); ++i) meta << (i ? "," : "") << inst.values[i];
      meta << "\nm: " << inst.parts << "\nlambda: " << pair.lambda.str() << "\nrho: " << pair.rho.str()
           << "\nt1_nodes: " << pair.t1.node_count() << "\nt2_nodes: " << pair.t2.node_count() << '\n';
      if (inst.values.size() <= 12) {
        const auto partition = balpart_bruteforce(inst);
        meta << "label: " << (partition ? "yes" : "no") << '\n';
        if (partition) {
          meta << "partition:";
          for (const auto& s : *partition) {
            meta << ' ';
            for (std::size_t i = 0; i < s.size(); ++i) meta << (i ? "," : "") << s[i];
          }
          meta << '\n';
        }
      }
      write_file(prefix + ".meta", meta.str());
      out << "wrote " << prefix << ".t1.tree " << prefix << ".t2.tree " << prefix << ".meta\n";
    } else if (*ver) {
      const MergeTree f = parse_merge_tree(read_file(a_path));
      const MergeTree g = parse_merge_tree(read_file(b_path));
      const Rational eps = Rational::parse(eps_text);
      if (eps.sign() < 0) throw ValidationError("--eps must be non-negative");
      const auto [alpha, beta] = parse_maps(read_file(maps_path), f.size(), g.size());
      const auto r = check_compatible(f, g, alpha, beta, eps);
      auto pf = [](bool b) { return std::string(b ? "PASS" : "FAIL"); };
      rep.text("heights", pf(r.heights));
      rep.text("ancestry", pf(r.ancestry));
      rep.text("round_trip", pf(r.round_trip));
      rep.text("overall", pf(r.ok()));
      if (!r.ok()) rep.text("detail", r.detail);
      rep.print(out);
    } else if (*orc_gh) {
      const MetricTree t1 = parse_tree(read_file(a_path));
      const MetricTree t2 = parse_tree(read_file(b_path));
      rep.num("gh_vertices", gh_bruteforce_vertices(t1, t2, limit < 0 ? 6 : limit));
      rep.print(out);
    } else if (*orc_il) {
      const MergeTree f = parse_merge_tree(read_file(a_path));
      const MergeTree g = parse_merge_tree(read_file(b_path));
      rep.num("interleaving", interleaving_bruteforce(f, g, limit < 0 ? 5 : limit));
      rep.print(out);
    }
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace treegh::cli
