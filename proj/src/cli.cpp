#include "dynemb/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynemb/error.hpp"
#include "dynemb/eval.hpp"
#include "dynemb/json_io.hpp"
#include "dynemb/pipeline.hpp"

namespace fs = std::filesystem;

namespace dynemb {

namespace {

// Bad flags or out-of-range values; exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphInput {
  std::string input;
  std::size_t snapshots = 0;
  double time_window = 0.0;
  bool by_index = false;
  std::string snapshot_dir;

  bool given() const { return !input.empty() || !snapshot_dir.empty(); }
};

struct LoadedGraph {
  SnapshotSequence seq;
  std::uint64_t hash = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t records = 0;
};

std::uint64_t fnv1a(const std::string& path, std::uint64_t h = 1469598103934665603ULL) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << v;
  return s.str();
}

void add_graph_options(CLI::App* sub, GraphInput& g) {
  auto* in = sub->add_option("--input", g.input, "edge list: src dst timestamp [weight]");
  auto* dir = sub->add_option("--snapshot-dir", g.snapshot_dir, "directory of G_<t>.edges files");
  in->excludes(dir);
  auto* n = sub->add_option("--snapshots", g.snapshots, "split into this many equal-width windows");
  auto* w = sub->add_option("--time-window", g.time_window, "split into windows of this width");
  auto* b = sub->add_flag("--by-index", g.by_index, "timestamps are snapshot indices");
  n->excludes(w)->excludes(b);
  w->excludes(b);
}

std::string snapshot_file(std::size_t t) { return "G_" + std::to_string(t) + ".edges"; }

LoadedGraph load_snapshot_dir(const std::string& dir, NodeRegistry registry) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "'" + dir + "' is not a directory");
  LoadedGraph g;
  std::vector<std::vector<Edge>> per_snapshot;
  for (std::size_t t = 0;; ++t) {
    const auto path = (fs::path(dir) / snapshot_file(t)).string();
    if (!fs::exists(path)) break;
    g.hash = fnv1a(path, t == 0 ? 1469598103934665603ULL : g.hash);
    std::vector<Edge> edges;
    try {
      IngestResult r = ingest_edge_file(path, {}, std::move(registry));
      registry = std::move(r.registry);
      for (const auto& e : r.edges.edges) edges.push_back({e.src, e.dst, e.weight});
      g.records += r.edges.edges.size();
      g.self_loops_dropped += r.self_loops_dropped;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyInput) throw;
    }
    per_snapshot.push_back(std::move(edges));
  }
  if (per_snapshot.empty()) {
    throw Error(ErrorCode::IoError, "no " + snapshot_file(0) + " in '" + dir + "'");
  }
  for (std::size_t t = 0; t < per_snapshot.size(); ++t) {
    g.seq.snapshots.emplace_back(t, registry.size(), per_snapshot[t]);
  }
  g.seq.registry = std::move(registry);
  return g;
}

LoadedGraph load_graph(const GraphInput& in, NodeRegistry registry = {}) {
  if (!in.snapshot_dir.empty()) return load_snapshot_dir(in.snapshot_dir, std::move(registry));
  if (in.input.empty()) throw UsageError("--input or --snapshot-dir is required");
  SnapshotPolicy policy;
  if (in.snapshots > 0) {
    policy = SplitByCount{in.snapshots};
  } else if (in.time_window > 0.0) {
    policy = SplitByWindow{in.time_window};
  } else if (in.by_index) {
    policy = SplitByIndex{};
  } else {
    throw UsageError("--input needs one of --snapshots N (N >= 1), --time-window W (W > 0), --by-index");
  }
  LoadedGraph g;
  g.hash = fnv1a(in.input);
  IngestResult r = ingest_edge_file(in.input, {}, std::move(registry));
  g.records = r.edges.edges.size();
  g.self_loops_dropped = r.self_loops_dropped;
  g.seq = snapshot_split(r.edges, std::move(r.registry), policy);
  return g;
}

nlohmann::ordered_json graph_json(const GraphInput& in, const LoadedGraph& g) {
  nlohmann::ordered_json j;
  if (!in.snapshot_dir.empty()) {
    j["snapshot_dir"] = in.snapshot_dir;
  } else {
    j["input"] = in.input;
    if (in.snapshots > 0) j["snapshots"] = in.snapshots;
    if (in.time_window > 0.0) j["time_window"] = in.time_window;
    if (in.by_index) j["by_index"] = true;
  }
  j["input_hash"] = hex(g.hash);
  return j;
}

struct EmbedOptions {
  EmbedConfig cfg;
  std::string bias = "uniform";
  std::string method = "lstm-node2vec";
};

void add_embed_options(CLI::App* sub, EmbedOptions& o) {
  EmbedConfig& c = o.cfg;
  sub->add_option("--method", o.method, "lstm-node2vec | node2vec | deepwalk")
      ->check(CLI::IsMember({"lstm-node2vec", "node2vec", "deepwalk"}));
  sub->add_option("--dim", c.dim, "embedding size d");
  sub->add_option("--L", c.window, "history length L (>= 2)");
  sub->add_option("--k", c.temporal_walks, "temporal walks per node");
  sub->add_option("--p", c.p, "return parameter");
  sub->add_option("--q", c.q, "in-out parameter");
  sub->add_option("--bias", o.bias, "temporal walk bias")->check(CLI::IsMember({"uniform", "second-order"}));
  sub->add_option("--walks_per_node", c.walks_per_node);
  sub->add_option("--walk_length", c.walk_length);
  sub->add_option("--context", c.context, "skipgram window");
  sub->add_option("--negatives", c.negatives);
  sub->add_option("--epochs_sgns", c.epochs_sgns);
  sub->add_option("--lr_sgns_start", c.lr_sgns_start);
  sub->add_option("--lr_sgns_end", c.lr_sgns_end);
  sub->add_option("--epochs_lstm", c.epochs_lstm);
  sub->add_option("--batch", c.batch);
  sub->add_option("--lr_adam", c.lr_adam);
  sub->add_option("--clip", c.clip);
  sub->add_option("--encoder_layers", c.encoder_layers);
  sub->add_option("--threads", c.threads);
}

// Applies derived fields and bound checks; throws UsageError.
void finish_embed_options(EmbedOptions& o, std::uint64_t seed) {
  o.cfg.seed = seed;
  o.cfg.bias = parse_bias(o.bias);
  if (o.method == "deepwalk") o.cfg.p = o.cfg.q = 1.0;
  try {
    o.cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

EmbeddingStream run_embedding(const SnapshotSequence& seq, const EmbedOptions& o) {
  if (o.method == "lstm-node2vec") return embed_stream(seq, o.cfg);
  EmbeddingStream s = embed_static_stream(seq, o.cfg);
  s.method = o.method;
  return s;
}

struct EvalOptions {
  std::string task;
  std::string labels;
  std::string op;
  ClassifierConfig cls;
  bool shuffle = false;
};

void add_eval_options(CLI::App* sub, EvalOptions& o) {
  sub->add_option("--task", o.task, "anomaly | link | node")
      ->required()
      ->check(CLI::IsMember({"anomaly", "link", "node"}));
  sub->add_option("--labels", o.labels, "edge labels (anomaly) or node labels (node)");
  sub->add_option("--op", o.op, "edge operator: l1 | l2 | hadamard | average")
      ->check(CLI::IsMember({"l1", "l2", "hadamard", "average"}));
  sub->add_option("--reg", o.cls.reg, "L2 coefficient");
  sub->add_option("--epochs", o.cls.epochs, "gradient descent steps");
  sub->add_option("--lr", o.cls.lr, "gradient descent step size");
  sub->add_flag("--shuffle-labels", o.shuffle, "permute edge labels per snapshot (null model)");
}

void finish_eval_options(EvalOptions& o, const GraphInput& g, std::uint64_t seed) {
  o.cls.seed = seed;
  if (o.op.empty()) o.op = o.task == "link" ? "hadamard" : "l1";
  o.cls.op = parse_edge_op(o.op);
  if ((o.task == "anomaly" || o.task == "node") && o.labels.empty()) {
    throw UsageError("--task " + o.task + " requires --labels");
  }
  if (o.task == "link" && !g.given()) throw UsageError("--task link requires --input or --snapshot-dir");
  if (!(o.cls.lr > 0.0) || o.cls.reg < 0.0) throw UsageError("--lr must be > 0 and --reg >= 0");
}

LabeledEdgeSet read_edge_labels(const std::string& path, NodeRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  LabeledEdgeSet out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::size_t t = 0;
    std::string u, v;
    int label = -1;
    if (!(fields >> t >> u >> v >> label) || (label != 0 && label != 1)) {
      throw Error(ErrorCode::MalformedLine, path + ":" + std::to_string(number) + ": expected 't src dst 0|1'",
                  number);
    }
    if (out.per_snapshot.size() <= t) out.per_snapshot.resize(t + 1);
    out.per_snapshot[t].push_back(
        {registry.register_node(u), registry.register_node(v), static_cast<EdgeClass>(label)});
  }
  return out;
}

EvalReport run_task(const EvalOptions& o, const EmbeddingStream& es, NodeRegistry& registry,
                    const GraphInput& g) {
  if (o.task == "anomaly") {
    LabeledEdgeSet labels = read_edge_labels(o.labels, registry);
    if (o.shuffle) {
      Rng rng = make_rng(o.cls.seed, {tag(Stream::Shuffle)});
      labels = shuffle_labels(labels, rng);
    }
    return run_anomaly_task(es, labels, o.cls);
  }
  if (o.task == "link") {
    LoadedGraph graph = load_graph(g, registry);
    registry = graph.seq.registry;
    return run_link_prediction(es, graph.seq, o.cls);
  }
  return run_node_classification(es, read_node_labels_file(o.labels, registry), o.cls);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

void write_snapshot(const fs::path& path, const Snapshot& s, const NodeRegistry& registry) {
  std::ostringstream text;
  for (const Edge& e : s.edges()) {
    text << registry.label(e.u) << ' ' << registry.label(e.v) << ' ' << s.index() << ' '
         << format_real(e.weight) << '\n';
  }
  write_text(path, text.str());
}

// ---- subcommands ------------------------------------------------------------

int cmd_ingest(const GraphInput& g, const std::string& out_dir, std::ostream& out) {
  LoadedGraph graph = load_graph(g);
  out << "nodes " << graph.seq.registry.size() << '\n'
      << "edge_records " << graph.records << '\n'
      << "self_loops_dropped " << graph.self_loops_dropped << '\n'
      << "snapshots " << graph.seq.size() << '\n';
  for (const Snapshot& s : graph.seq.snapshots) {
    out << "G_" << s.index() << " active_nodes " << s.node_set().size() << " edges " << s.edges().size()
        << '\n';
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    for (const Snapshot& s : graph.seq.snapshots) {
      write_snapshot(fs::path(out_dir) / snapshot_file(s.index()), s, graph.seq.registry);
    }
  }
  return 0;
}

int cmd_embed(const GraphInput& g, const EmbedOptions& o, const std::string& out_dir, std::ostream& out) {
  LoadedGraph graph = load_graph(g);
  const EmbeddingStream stream = run_embedding(graph.seq, o);
  nlohmann::ordered_json extra;
  extra["version"] = kVersion;
  extra["command"] = "embed";
  extra["graph"] = graph_json(g, graph);
  save_stream(stream, graph.seq.registry, out_dir, extra.dump());
  out << "wrote " << stream.times.size() << " embedding matrices to " << out_dir << '\n';
  return 0;
}

int cmd_inject(const GraphInput& g, InjectionPlan plan, bool n_given, bool start_given, std::size_t L,
               std::uint64_t seed, const std::string& out_dir, std::ostream& out) {
  LoadedGraph graph = load_graph(g);
  if (!start_given) plan.start = L >= 1 ? L - 1 : 0;
  if (plan.start >= graph.seq.size()) {
    throw UsageError("--start " + std::to_string(plan.start) + " is past the last snapshot");
  }
  if (!n_given) {
    const std::size_t active = graph.seq[plan.start].node_set().size();
    plan.n = std::max<std::size_t>(10, active / 20);
    plan.cap_to_available = true;
  }
  Rng rng = make_rng(seed, {tag(Stream::Injection)});
  const InjectionResult result = inject_stars(graph.seq, plan, rng);

  ensure_dir(out_dir);
  const NodeRegistry& reg = graph.seq.registry;
  std::ostringstream labels;
  std::size_t injected = 0;
  for (std::size_t t = 0; t < result.seq.size(); ++t) {
    write_snapshot(fs::path(out_dir) / snapshot_file(t), result.seq[t], reg);
    for (const LabeledEdge& e : result.labels.per_snapshot[t]) {
      labels << t << ' ' << reg.label(e.u) << ' ' << reg.label(e.v) << ' ' << static_cast<int>(e.label) << '\n';
      injected += e.label == EdgeClass::Anomalous;
    }
  }
  write_text(fs::path(out_dir) / "labels.txt", labels.str());

  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["command"] = "inject";
  manifest["graph"] = graph_json(g, graph);
  manifest["plan"] = {{"n", plan.n}, {"k", plan.k_consec}, {"m", plan.m_gap}, {"start", plan.start}};
  manifest["seed"] = seed;
  manifest["anomalies"] = nlohmann::ordered_json::array();
  for (const StarAnomaly& a : result.anomalies) {
    std::vector<std::string> others;
    for (NodeId v : a.others) others.push_back(reg.label(v));
    manifest["anomalies"].push_back({{"snapshots", a.snapshots}, {"target", reg.label(a.target)}, {"others", others}});
  }
  write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  out << "injected " << result.anomalies.size() << " stars (" << injected << " anomalous edges) into "
      << out_dir << '\n';
  return 0;
}

void print_averages(const EvalReport& r, std::ostream& out) {
  for (std::size_t i = 0; i < r.metrics.size(); ++i) {
    out << "average " << r.metrics[i] << ' ' << format_real(r.averages[i]) << '\n';
  }
}

int cmd_eval(const EvalOptions& o, const std::string& emb_dir, const GraphInput& g, const std::string& out_dir,
             std::ostream& out) {
  NodeRegistry registry;
  const EmbeddingStream es = load_stream(emb_dir, registry);
  const EvalReport report = run_task(o, es, registry, g);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_text(fs::path(out_dir) / "report.json", to_json(report) + "\n");
  }
  print_averages(report, out);
  return 0;
}

std::vector<std::size_t> parse_values(const std::string& text, std::ostream& err) {
  std::vector<std::size_t> values;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v < 2) throw UsageError("--values: '" + item + "' is not an integer >= 2");
    const auto value = static_cast<std::size_t>(v);
    if (std::find(values.begin(), values.end(), value) != values.end()) {
      err << "warning: duplicate L=" << value << " ignored\n";
      continue;
    }
    values.push_back(value);
  }
  if (values.empty()) throw UsageError("--values needs at least one L");
  return values;
}

int cmd_sweep(const GraphInput& g, EmbedOptions o, const EvalOptions& e, const std::vector<std::size_t>& values,
              const std::string& out_dir, std::ostream& out) {
  LoadedGraph graph = load_graph(g);
  std::ostringstream csv;
  bool header = false;
  for (std::size_t L : values) {
    o.cfg.window = L;
    const EmbeddingStream es = run_embedding(graph.seq, o);
    NodeRegistry registry = graph.seq.registry;
    const EvalReport report = run_task(e, es, registry, g);
    if (!header) {
      csv << 'L';
      for (const auto& m : report.metrics) csv << ',' << m;
      csv << '\n';
      header = true;
    }
    csv << L;
    for (double v : report.averages) csv << ',' << format_real(v);
    csv << '\n';
    out << "L=" << L;
    for (std::size_t i = 0; i < report.metrics.size(); ++i) {
      out << ' ' << report.metrics[i] << '=' << format_real(report.averages[i]);
    }
    out << '\n';
  }
  ensure_dir(out_dir);
  write_text(fs::path(out_dir) / "sweep.csv", csv.str());
  return 0;
}

// Turns `--config file.json` into flags placed ahead of the user's flags, so
// later (explicit) flags win under TakeLast.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + config_path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, config_path + ": " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::FormatError, config_path + ": expected a JSON object");
  std::vector<std::string> flags;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) flags.push_back(flag);
    } else if (value.is_string()) {
      flags.push_back(flag);
      flags.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + (item.is_string() ? item.get<std::string>() : item.dump());
      flags.push_back(flag);
      flags.push_back(joined);
    } else {
      flags.push_back(flag);
      flags.push_back(value.dump());
    }
  }
  if (rest.empty()) return flags;
  out.push_back(rest.front());
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic network embedding with temporal walks, an LSTM autoencoder and skipgram"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--config", "JSON file of flag values; explicit flags override it");

  std::uint64_t seed = 0;
  GraphInput graph;
  std::string out_dir;
  EmbedOptions embed;
  EvalOptions eval;
  InjectionPlan plan;
  std::size_t inject_L = 0;
  std::string emb_dir;
  std::string values_text;

  auto* ingest = app.add_subcommand("ingest", "parse an edge list and report snapshot statistics");
  add_graph_options(ingest, graph);
  ingest->add_option("--out", out_dir, "write G_<t>.edges per snapshot here");

  auto* embed_cmd = app.add_subcommand("embed", "embed every snapshot from L-1 on");
  add_graph_options(embed_cmd, graph);
  add_embed_options(embed_cmd, embed);
  embed_cmd->add_option("--seed", seed);
  embed_cmd->add_option("--out", out_dir, "output directory")->required();

  auto* inject = app.add_subcommand("inject", "inject star anomalies and write labeled snapshots");
  add_graph_options(inject, graph);
  auto* n_opt = inject->add_option("--n", plan.n, "edges per star (default max(10, 5% of active nodes))");
  inject->add_option("--k", plan.k_consec, "consecutive snapshots per star");
  inject->add_option("--m", plan.m_gap, "snapshots skipped between stars");
  auto* start_opt = inject->add_option("--start", plan.start, "first snapshot eligible for a star");
  inject->add_option("--L", inject_L, "warm-up length; stars start at L-1 unless --start is given");
  inject->add_option("--seed", seed);
  inject->add_option("--out", out_dir, "output directory")->required();

  auto* eval_cmd = app.add_subcommand("eval", "run an evaluation protocol on saved embeddings");
  add_graph_options(eval_cmd, graph);
  add_eval_options(eval_cmd, eval);
  eval_cmd->add_option("--emb", emb_dir, "directory written by embed")->required();
  eval_cmd->add_option("--seed", seed);
  eval_cmd->add_option("--out", out_dir, "write report.json here");

  auto* sweep = app.add_subcommand("sweep-L", "embed and evaluate for several history lengths");
  add_graph_options(sweep, graph);
  add_embed_options(sweep, embed);
  add_eval_options(sweep, eval);
  sweep->add_option("--values", values_text, "comma-separated L values")->required();
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out_dir, "write sweep.csv here")->required();

  for (auto* sub : {ingest, embed_cmd, inject, eval_cmd, sweep}) {
    for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    if (ingest->parsed()) {
      if (!graph.given()) throw UsageError("--input or --snapshot-dir is required");
      return cmd_ingest(graph, out_dir, out);
    }
    if (embed_cmd->parsed()) {
      finish_embed_options(embed, seed);
      if (!graph.given()) throw UsageError("--input or --snapshot-dir is required");
      return cmd_embed(graph, embed, out_dir, out);
    }
    if (inject->parsed()) {
      if (plan.n < 1 || plan.k_consec < 1) throw UsageError("--n and --k must be >= 1");
      if (!graph.given()) throw UsageError("--input or --snapshot-dir is required");
      return cmd_inject(graph, plan, n_opt->count() > 0, start_opt->count() > 0, inject_L, seed, out_dir, out);
    }
    if (eval_cmd->parsed()) {
      finish_eval_options(eval, graph, seed);
      return cmd_eval(eval, emb_dir, graph, out_dir, out);
    }
    if (sweep->parsed()) {
      const auto values = parse_values(values_text, err);
      finish_embed_options(embed, seed);
      finish_eval_options(eval, graph, seed);
      if (!graph.given()) throw UsageError("--input or --snapshot-dir is required");
      return cmd_sweep(graph, embed, eval, values, out_dir, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace dynemb
