#include "hsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "hsp/errors.hpp"

namespace hsp::io {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
  double w = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, w);
  if (ec != std::errc() || ptr != end)
    throw ParseError("invalid weight '" + std::string(tok) + "'", line_no);
  if (!std::isfinite(w)) throw ValidationError("line " + std::to_string(line_no) + ": non-finite weight");
  if (w < 0.0)
    throw ValidationError("line " + std::to_string(line_no) + ": negative weight " +
                          std::string(tok));
  return w;
}

std::size_t parse_index(std::string_view tok, std::size_t line_no, const char* what) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line_no);
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

template <typename Parse>
Instance read_with_context(const std::filesystem::path& path, Parse parse) {
  auto in = open_input(path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw e.in_source(path.string());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "auto" || s == "automatic") return Format::automatic;
  if (s == "edgelist") return Format::edgelist;
  if (s == "matrix") return Format::matrix;
  throw ParamError("unknown instance format '" + s + "' (expected auto|edgelist|matrix)");
}

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

Instance parse_edgelist(std::istream& in) {
  Instance inst;
  inst.format = Format::edgelist;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<Edge> edges;

  const auto intern = [&](std::string_view tok) {
    auto [it, inserted] = ids.try_emplace(std::string(tok), static_cast<NodeId>(inst.labels.size()));
    if (inserted) inst.labels.emplace_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3)
      throw ParseError("expected 'u v w', found " + std::to_string(tokens.size()) + " fields",
                       line_no);
    const double w = parse_weight(tokens[2], line_no);
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    if (u == v)
      throw ValidationError("line " + std::to_string(line_no) + ": self-loop on '" +
                            std::string(tokens[0]) + "'");
    if (w > 0.0) edges.push_back({u, v, w});
  }
  inst.graph = build_graph(edges, true, inst.labels.size());
  return inst;
}

Instance read_edgelist(const std::filesystem::path& path) {
  return read_with_context(path, [](std::istream& in) { return parse_edgelist(in); });
}

Instance parse_matrix(std::istream& in) {
  Instance inst;
  inst.format = Format::matrix;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!n) {
      if (tokens.size() != 2) throw ParseError("expected header 'n k'", line_no);
      n = parse_index(tokens[0], line_no, "node count");
      inst.declared_k = parse_index(tokens[1], line_no, "k");
      continue;
    }
    if (tokens.size() != 3) throw ParseError("expected 'i j w'", line_no);
    const auto i = parse_index(tokens[0], line_no, "node index");
    const auto j = parse_index(tokens[1], line_no, "node index");
    if (!(i < j && j < *n))
      throw ParseError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                           ") must satisfy 0 <= i < j < n",
                       line_no);
    if (!seen.emplace(i, j).second)
      throw ParseError("duplicate pair (" + std::to_string(i) + "," + std::to_string(j) + ")",
                       line_no);
    const double w = parse_weight(tokens[2], line_no);
    if (w > 0.0) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), w});
  }
  if (!n) throw ParseError("missing header 'n k'");
  inst.graph = build_graph(edges, false, *n);
  inst.labels.reserve(*n);
  for (std::size_t i = 0; i < *n; ++i) inst.labels.push_back(std::to_string(i));
  return inst;
}

Instance read_matrix(const std::filesystem::path& path) {
  return read_with_context(path, [](std::istream& in) { return parse_matrix(in); });
}

Instance load_instance(const std::filesystem::path& path, Format format) {
  if (format == Format::automatic) {
    auto in = open_input(path);
    std::string line;
    format = Format::edgelist;
    while (std::getline(in, line)) {
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (tokens.size() == 2) format = Format::matrix;
      break;
    }
  }
  return format == Format::matrix ? read_matrix(path) : read_edgelist(path);
}

void write_edgelist(std::ostream& out, const WeightedGraph& g, std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != g.node_count())
    throw ValidationError("label count does not match node count");
  for (const auto& e : g.edges()) {
    if (labels.empty())
      out << e.u << ' ' << e.v;
    else
      out << labels[e.u] << ' ' << labels[e.v];
    out << ' ' << format_number(e.w) << '\n';
  }
}

void write_edgelist(const std::filesystem::path& path, const WeightedGraph& g,
                    std::span<const std::string> labels) {
  auto out = open_output(path);
  write_edgelist(out, g, labels);
  finish_output(out, path);
}

void write_matrix(std::ostream& out, const WeightedGraph& g, std::size_t k) {
  out << g.node_count() << ' ' << k << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_number(e.w) << '\n';
}

void write_matrix(const std::filesystem::path& path, const WeightedGraph& g, std::size_t k) {
  auto out = open_output(path);
  write_matrix(out, g, k);
  finish_output(out, path);
}

nlohmann::json params_to_json(const SolverParams& p) {
  return {{"k", p.k},
          {"p_min", p.p_min},
          {"p_max", p.p_max},
          {"p_step", p.p_step},
          {"q", p.q},
          {"init", to_string(p.init_mode)},
          {"init_draws", p.init_draws},
          {"shake", to_string(p.shake_mode)},
          {"search", to_string(p.search_mode)},
          {"seed", p.seed}};
}

SolverParams params_from_json(const nlohmann::json& j) {
  SolverParams p;
  p.k = j.at("k").get<std::size_t>();
  p.p_min = j.at("p_min").get<std::size_t>();
  p.p_max = j.at("p_max").get<std::size_t>();
  p.p_step = j.at("p_step").get<std::size_t>();
  p.q = j.at("q").get<double>();
  p.init_mode = parse_init_mode(j.at("init").get<std::string>());
  p.init_draws = j.at("init_draws").get<std::size_t>();
  p.shake_mode = parse_shake_mode(j.at("shake").get<std::string>());
  p.search_mode = parse_search_mode(j.at("search").get<std::string>());
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

nlohmann::json run_record(const RunResult& result, const RunMeta& meta) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& ev : result.trace) trace.push_back({ev.iteration, ev.objective});
  return {{"instance", meta.instance},
          {"algorithm", meta.algorithm},
          {"params", params_to_json(meta.params)},
          {"seed", result.seed},
          {"k", meta.params.k},
          {"best_objective", result.best_objective},
          {"best_set", result.best_set},
          {"iterations", result.iterations},
          {"wall_time_s", result.wall_time_s},
          {"trace", trace}};
}

std::pair<RunMeta, RunResult> parse_run_record(const nlohmann::json& j) {
  RunMeta meta;
  meta.instance = j.at("instance").get<std::string>();
  meta.algorithm = j.at("algorithm").get<std::string>();
  meta.params = params_from_json(j.at("params"));
  RunResult r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.best_objective = j.at("best_objective").get<double>();
  r.best_set = j.at("best_set").get<std::vector<NodeId>>();
  r.iterations = j.at("iterations").get<std::uint64_t>();
  r.wall_time_s = j.at("wall_time_s").get<double>();
  for (const auto& ev : j.at("trace"))
    r.trace.push_back({ev.at(0).get<std::uint64_t>(), ev.at(1).get<double>()});
  return {std::move(meta), std::move(r)};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << csv_field(r.instance) << ',' << csv_field(r.algorithm) << ',' << r.k << ',' << r.seed
        << ',';
    if (r.ok)
      out << format_number(r.objective) << ',' << format_number(r.deviation_pct) << ','
          << format_number(r.rank);
    else
      out << ",,";
    out << ',' << r.iterations << ',' << format_number(r.wall_ms) << '\n';
  }
  for (const auto& s : report.summaries) {
    out << kMeanRowLabel << ',' << csv_field(s.algorithm) << ",,,," << format_number(s.mean_deviation)
        << ',' << format_number(s.mean_rank) << ",,\n";
    out << kMedianRowLabel << ',' << csv_field(s.algorithm) << ",,,,"
        << format_number(s.median_deviation) << ',' << format_number(s.median_rank) << ",,\n";
  }
}

void write_bench_jsonl(std::ostream& out, const BenchReport& report) {
  for (const auto& r : report.rows) {
    nlohmann::json rec;
    if (r.ok) {
      rec = run_record(r.result, RunMeta{r.instance, r.algorithm, r.params});
      rec["deviation_pct"] = r.deviation_pct;
      rec["rank"] = r.rank;
    } else {
      rec = {{"instance", r.instance}, {"algorithm", r.algorithm}, {"k", r.k},
             {"seed", r.seed},         {"params", params_to_json(r.params)},
             {"error", r.error}};
    }
    rec["replicate"] = r.replicate;
    out << rec.dump() << '\n';
  }
}

}  // namespace hsp::io
