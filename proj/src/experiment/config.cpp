#include "rbamg/experiment/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rbamg {

std::string to_string(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::automatic: return "auto";
    case SplitStrategy::every_other: return "every_other";
    case SplitStrategy::stride: return "stride";
    case SplitStrategy::red_black: return "red_black";
    case SplitStrategy::explicit_list: return "explicit";
  }
  return "unknown";
}

std::string to_string(BasisKind b) {
  switch (b) {
    case BasisKind::canonical: return "canonical";
    case BasisKind::ideal: return "ideal";
    case BasisKind::flow: return "flow";
    case BasisKind::optimal: return "optimal";
  }
  return "unknown";
}

std::string to_string(RestrictionKind r) {
  switch (r) {
    case RestrictionKind::p_dual: return "p_dual";
    case RestrictionKind::ideal: return "ideal";
    case RestrictionKind::spectral: return "spectral";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw Error("invalid value '" + text + "' for " + key);
  return value;
}

Index parse_count(const std::string& text, const std::string& key) {
  return static_cast<Index>(parse_number<unsigned long long>(text, key));
}

double parse_real(const std::string& text, const std::string& key) {
  return parse_number<double>(text, key);
}

std::vector<Index> parse_index_list(const std::string& text,
                                    const std::string& key) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error("empty entry in " + key);
    out.push_back(parse_count(item, key));
  }
  return out;
}

template <class E>
E parse_enum(const std::string& text, const std::string& key,
             const std::map<std::string, E>& table) {
  const auto it = table.find(text);
  if (it == table.end()) {
    std::string options;
    for (const auto& [name, _] : table) options += (options.empty() ? "" : ", ") + name;
    throw Error("invalid value '" + text + "' for " + key + " (expected one of " +
                options + ")");
  }
  return it->second;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"problem.kind",
       [](ExperimentConfig& c, const std::string& v) {
         try {
           c.problem.kind = problem_from_string(v);
         } catch (const Error&) {
           throw Error("invalid value '" + v +
                       "' for problem.kind (expected poisson1d, poisson2d, "
                       "advdiff1d or file)");
         }
       }},
      {"problem.n", [](auto& c, const auto& v) { c.problem.n = parse_count(v, "problem.n"); }},
      {"problem.nx", [](auto& c, const auto& v) { c.problem.nx = parse_count(v, "problem.nx"); }},
      {"problem.ny", [](auto& c, const auto& v) { c.problem.ny = parse_count(v, "problem.ny"); }},
      {"problem.peclet",
       [](auto& c, const auto& v) { c.problem.peclet = parse_real(v, "problem.peclet"); }},
      {"problem.file", [](auto& c, const auto& v) { c.problem.path = v; }},
      {"smoother.kind",
       [](ExperimentConfig& c, const std::string& v) {
         c.smoother.kind = parse_enum<SmootherKind>(
             v, "smoother.kind",
             {{"richardson", SmootherKind::richardson},
              {"jacobi", SmootherKind::jacobi},
              {"gauss_seidel", SmootherKind::gauss_seidel_forward},
              {"gauss_seidel_forward", SmootherKind::gauss_seidel_forward}});
       }},
      {"smoother.omega",
       [](auto& c, const auto& v) { c.smoother.omega = parse_real(v, "smoother.omega"); }},
      {"split.strategy",
       [](ExperimentConfig& c, const std::string& v) {
         c.split = parse_enum<SplitStrategy>(
             v, "split.strategy",
             {{"auto", SplitStrategy::automatic},
              {"every_other", SplitStrategy::every_other},
              {"stride", SplitStrategy::stride},
              {"red_black", SplitStrategy::red_black},
              {"explicit", SplitStrategy::explicit_list}});
       }},
      {"split.stride", [](auto& c, const auto& v) { c.stride = parse_count(v, "split.stride"); }},
      {"split.offset", [](auto& c, const auto& v) { c.offset = parse_count(v, "split.offset"); }},
      {"split.coarse",
       [](auto& c, const auto& v) { c.coarse = parse_index_list(v, "split.coarse"); }},
      {"basis.kind",
       [](ExperimentConfig& c, const std::string& v) {
         c.basis = parse_enum<BasisKind>(v, "basis.kind",
                                         {{"canonical", BasisKind::canonical},
                                          {"ideal", BasisKind::ideal},
                                          {"flow", BasisKind::flow},
                                          {"optimal", BasisKind::optimal}});
       }},
      {"basis.max_tau",
       [](auto& c, const auto& v) { c.flow_max_tau = parse_count(v, "basis.max_tau"); }},
      {"basis.tol", [](auto& c, const auto& v) { c.flow_tol = parse_real(v, "basis.tol"); }},
      {"restriction.kind",
       [](ExperimentConfig& c, const std::string& v) {
         c.restriction = parse_enum<RestrictionKind>(
             v, "restriction.kind",
             {{"p_dual", RestrictionKind::p_dual},
              {"ideal", RestrictionKind::ideal},
              {"spectral", RestrictionKind::spectral}});
       }},
      {"scheme.kind",
       [](ExperimentConfig& c, const std::string& v) {
         try {
           c.scheme = scheme_from_string(v);
         } catch (const Error&) {
           throw Error("invalid value '" + v +
                       "' for scheme.kind (expected markovian, semi_markovian, "
                       "non_markovian or exact)");
         }
       }},
      {"scheme.k", [](auto& c, const auto& v) { c.k = parse_count(v, "scheme.k"); }},
      {"run.cycles", [](auto& c, const auto& v) { c.cycles = parse_count(v, "run.cycles"); }},
      {"run.seed",
       [](auto& c, const auto& v) { c.seed = parse_number<std::uint64_t>(v, "run.seed"); }},
      {"output.dir", [](auto& c, const auto& v) { c.output_dir = v; }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'section.key = value', got '" + line + "'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("unknown key '" + key + "'", line_no);
    if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no);
    try {
      it->second(config, value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return config;
}

void validate(const ExperimentConfig& c) {
  if (c.k < 1) throw Error("scheme.k must be at least 1");
  if (c.split == SplitStrategy::stride && c.stride < 1)
    throw Error("split.stride must be positive");
  if (c.split == SplitStrategy::explicit_list && c.coarse.empty())
    throw Error("split.strategy = explicit needs split.coarse");
  if (c.basis == BasisKind::flow && c.flow_max_tau < 1)
    throw Error("basis.max_tau must be positive");
  if (c.problem.kind == ProblemKind::custom_file &&
      !std::filesystem::exists(c.problem.path))
    throw Error("problem.file '" + c.problem.path + "' does not exist");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  ExperimentConfig config;
  try {
    config = parse_config(in);
  } catch (const ParseError& e) {
    throw ParseError(e.message() + " in " + path, e.line());
  }
  // Relative problem files are resolved against the config's directory.
  if (config.problem.kind == ProblemKind::custom_file &&
      std::filesystem::path(config.problem.path).is_relative() &&
      !std::filesystem::exists(config.problem.path)) {
    const auto base = std::filesystem::path(path).parent_path();
    config.problem.path = (base / config.problem.path).string();
  }
  validate(config);
  return config;
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "problem.kind = " << to_string(c.problem.kind) << '\n'
      << "problem.n = " << c.problem.n << '\n'
      << "problem.nx = " << c.problem.nx << '\n'
      << "problem.ny = " << c.problem.ny << '\n'
      << "problem.peclet = " << c.problem.peclet << '\n';
  if (!c.problem.path.empty()) out << "problem.file = " << c.problem.path << '\n';
  out << "smoother.kind = " << to_string(c.smoother.kind) << '\n'
      << "smoother.omega = " << c.smoother.omega << '\n'
      << "split.strategy = " << to_string(c.split) << '\n'
      << "split.stride = " << c.stride << '\n'
      << "split.offset = " << c.offset << '\n';
  if (!c.coarse.empty()) {
    out << "split.coarse = ";
    for (Index i = 0; i < c.coarse.size(); ++i) out << (i ? "," : "") << c.coarse[i];
    out << '\n';
  }
  out << "basis.kind = " << to_string(c.basis) << '\n'
      << "basis.max_tau = " << c.flow_max_tau << '\n'
      << "basis.tol = " << c.flow_tol << '\n'
      << "restriction.kind = " << to_string(c.restriction) << '\n'
      << "scheme.kind = " << to_string(c.scheme) << '\n'
      << "scheme.k = " << c.k << '\n'
      << "run.cycles = " << c.cycles << '\n'
      << "run.seed = " << c.seed << '\n'
      << "output.dir = " << c.output_dir << '\n';
  return out.str();
}

}  // namespace rbamg
