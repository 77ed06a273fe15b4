#pragma once

// Command-line front end. `run` executes one command and returns its exit code
// and output streams, so the whole CLI can be driven in-process.
//
// Exit codes: 0 ok, 1 not isomorphic, 64 usage, 65 parse/validation,
// 66 precondition (not connected / not conformal), 67 limit exceeded,
// 70 internal inconsistency.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercart/hypercart.hpp"

namespace hypercart::cli {

enum ExitCode : int {
  kOk = 0,
  kNotIsomorphic = 1,
  kUsage = 64,
  kInvalidInput = 65,
  kPrecondition = 66,
  kLimit = 67,
  kInternal = 70,
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;  ///< canonical payload
  std::string err;  ///< diagnostics
};

namespace detail {

struct Options {
  std::string format = "json";
  bool as_graph = false;
  bool strong = false;
  bool l2 = false;
  std::size_t max_exact = kDefaultMaxExact;
  std::size_t max_cliques = kDefaultMaxCliques;
  std::vector<std::string> files;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
};

inline std::string read_input(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") return {std::istreambuf_iterator<char>(stdin_stream), {}};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot read input file '" + path + "'");
  return {std::istreambuf_iterator<char>(file), {}};
}

inline std::string stats_text(const Stats& s) {
  std::ostringstream out;
  out << "n " << s.n << "\nm " << s.m << "\nmax_degree " << s.max_degree << "\nrank " << s.rank << "\n";
  for (const auto& [v, d] : s.degree) out << "degree " << v << " " << d << "\n";
  return out.str();
}

inline std::string assignment_text(int k, const std::map<VertexId, int>& assignment) {
  std::ostringstream out;
  out << "k " << k << "\n";
  for (const auto& [v, c] : assignment) out << v << " " << c << "\n";
  return out.str();
}

inline std::string factors_text(const std::vector<Hypergraph>& factors, const std::map<VertexId, TupleVertex>& coords) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out += "# factor " + std::to_string(i + 1) + "\n" + to_text(factors[i]);
  }
  out += "# coords\n";
  for (const auto& [v, t] : coords) out += "# " + v + " -> " + hypercart::detail::join_tokens(t.parts) + "\n";
  return out;
}

class Runner {
 public:
  Runner(const Options& o, std::istream& in) : o_(o), in_(in) {}

  Hypergraph load(const std::string& path) const {
    return parse_any(read_input(path, in_), o_.as_graph ? InputKind::graph : InputKind::hypergraph);
  }

  std::string emit(const nlohmann::json& j, const std::function<std::string()>& text) const {
    return o_.format == "text" ? text() : dump_canonical(j);
  }

  std::string emit(const Hypergraph& h) const {
    return emit(to_json(h), [&] { return to_text(h); });
  }

  CommandResult dispatch(const std::string& command) const {
    CommandResult r;
    const auto& files = o_.files;
    if (command == "validate") {
      r.out = emit(load(files[0]));
    } else if (command == "stats") {
      auto s = stats(load(files[0]));
      r.out = emit(to_json(s), [&] { return stats_text(s); });
    } else if (command == "two-section") {
      r.out = emit(two_section(load(files[0])).hypergraph());
    } else if (command == "l2-section") {
      auto s = l2_section(load(files[0]));
      r.out = emit(to_json(s), [&] { return to_text(s); });
    } else if (command == "conformal") {
      auto rep = is_conformal(load(files[0]), o_.max_cliques);
      r.out = emit(to_json(rep), [&] {
        return rep.conformal ? std::string("conformal\n")
                             : "not conformal: " + hypercart::detail::join_tokens(*rep.witness) + "\n";
      });
    } else if (command == "product") {
      std::vector<Hypergraph> factors;
      for (const auto& f : files) factors.push_back(load(f));
      r.out = emit(hyper_product(factors));
    } else if (command == "factor") {
      auto h = load(files[0]);
      if (o_.as_graph) {
        auto f = factor_graph(Graph::from_hypergraph(h));
        std::vector<Hypergraph> hs;
        for (const auto& g : f.factors) hs.push_back(g.hypergraph());
        r.out = emit(to_json(f), [&] { return factors_text(hs, f.coords); });
      } else {
        auto f = factor_hypergraph(h, o_.max_cliques);
        r.out = emit(to_json(f), [&] { return factors_text(f.factors, f.coords); });
      }
    } else if (command == "color") {
      auto c = col_algorithm_detailed(load(files[0]), o_.max_exact, o_.max_cliques);
      r.out = emit(to_json(c.coloring), [&] { return assignment_text(c.k, c.coloring.assignment); });
    } else if (command == "chromatic-number") {
      auto c = chromatic_number(load(files[0]), o_.strong ? ColoringMode::strong : ColoringMode::weak, o_.max_exact);
      r.out = emit(to_json(c.coloring), [&] { return assignment_text(c.k, c.coloring.assignment); });
    } else if (command == "chromatic-index") {
      auto h = load(files[0]);
      auto q = chromatic_index(h, o_.max_exact);
      auto delta = stats(h).max_degree;
      auto j = to_json(q);
      j["max_degree"] = delta;
      j["colored_hyperedge_property"] = static_cast<std::size_t>(q.q) == delta;
      r.out = emit(j, [&] {
        std::string s = "k " + std::to_string(q.q) + "\nmax_degree " + std::to_string(delta) + "\n";
        for (const auto& [e, c] : q.coloring.assignment) {
          s += hypercart::detail::join_tokens(e) + " : " + std::to_string(c) + "\n";
        }
        return s;
      });
    } else if (command == "isomorphic") {
      auto a = load(files[0]);
      auto b = load(files[1]);
      auto w = o_.l2 ? l2_isomorphic(l2_section(a), l2_section(b)) : are_isomorphic(a, b);
      if (!w) {
        r.exit_code = kNotIsomorphic;
        r.err = "not isomorphic\n";
        r.out = emit(nlohmann::json{{"isomorphic", false}}, [] { return std::string("not isomorphic\n"); });
      } else {
        auto j = to_json(*w);
        j["isomorphic"] = true;
        r.out = emit(j, [&] {
          std::string s;
          for (const auto& [x, y] : w->mapping) s += x + " -> " + y + "\n";
          return s;
        });
      }
    } else if (command == "random") {
      r.out = emit(random_conformal_hypergraph(o_.n, o_.p, o_.seed));
    }
    return r;
  }

 private:
  const Options& o_;
  std::istream& in_;
};

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline CommandResult run(const std::vector<std::string>& args, std::istream& stdin_stream = std::cin) {
  detail::Options o;
  CLI::App app{"Cartesian products, sections, colorings and prime factorization of hypergraphs", "hypercart"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool graph_flag) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-exact-vertices", o.max_exact, "size limit of exact searches")->check(CLI::PositiveNumber);
    sub->add_option("--max-cliques", o.max_cliques, "maximal clique enumeration limit")->check(CLI::PositiveNumber);
    if (graph_flag) sub->add_flag("--as-graph", o.as_graph, "inputs are graphs (2 vertices per line)");
  };
  auto one_file = [&](const std::string& name, const std::string& help, bool graph_flag) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.files, "input file ('-' for stdin)")->required()->expected(1);
    add_common(sub, graph_flag);
    return sub;
  };

  one_file("validate", "parse, validate and print in canonical form", true);
  one_file("stats", "vertex/hyperedge counts, max degree, rank, degrees", true);
  one_file("two-section", "2-section graph", false);
  one_file("l2-section", "labelled 2-section", false);
  one_file("conformal", "conformality test with witness", false);
  one_file("factor", "prime factorization (connected conformal input)", true);
  one_file("color", "minimal weak coloring through the prime factors", false);
  one_file("chromatic-number", "exact chromatic number", false)->add_flag("--strong", o.strong, "strong coloring");
  one_file("chromatic-index", "exact chromatic index", false);

  auto* product = app.add_subcommand("product", "Cartesian product of two or more inputs");
  product->add_option("files", o.files, "input files ('-' for stdin)")->required()->expected(2, 1 << 20);
  add_common(product, true);

  auto* iso = app.add_subcommand("isomorphic", "isomorphism test with witness");
  iso->add_option("files", o.files, "two input files")->required()->expected(2);
  iso->add_flag("--l2", o.l2, "compare labelled 2-sections");
  add_common(iso, false);

  auto* random = app.add_subcommand("random", "random connected conformal hypergraph");
  random->add_option("--n", o.n, "vertex count")->required()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  random->add_option("--p", o.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  random->add_option("--seed", o.seed, "random seed");
  add_common(random, false);

  CommandResult result;
  std::vector<const char*> argv{"hypercart"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kOk : kUsage;
    return result;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return detail::Runner(o, stdin_stream).dispatch(command);
  } catch (const PreconditionError& e) {
    result.exit_code = kPrecondition;
    result.err = "precondition failed (" + e.precondition() + "): " + e.what() + "\n";
  } catch (const LimitExceededError& e) {
    result.exit_code = kLimit;
    result.err = std::string("limit exceeded: ") + e.what() + "\n";
  } catch (const InternalInconsistencyError& e) {
    result.exit_code = kInternal;
    result.err = std::string("internal inconsistency: ") + e.what() + "\n";
  } catch (const ValidationError& e) {
    result.exit_code = kInvalidInput;
    result.err = std::string("invalid input: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace hypercart::cli
