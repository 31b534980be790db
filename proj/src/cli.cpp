#include "ens/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ens/corpus.hpp"
#include "ens/dot.hpp"
#include "ens/linear2.hpp"
#include "ens/properties.hpp"
#include "ens/reductions.hpp"
#include "ens/synthesis.hpp"
#include "ens/unions.hpp"

namespace ens::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

/// Unreadable files and malformed command arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Result {
  int code = holds;
  std::string text;
  json data = json::object();
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

bool is_union_file(const std::string& path) { return fs::path(path).extension() == ".union"; }

UnionFile load_union(const std::string& path) { return parse_union(read_text(path), fs::path(path).parent_path()); }

JoinPlan plan_of(const UnionFile& file) {
  return file.plan.terminals.empty() ? default_plan(file.components) : file.plan;
}

void require_valid(const TransitionSystem& ts, const std::string& what) {
  const auto report = validate(ts);
  if (!report.ok()) throw InputError(what + " is not a valid transition system:\n" + describe(ts, report));
}

TransitionSystem load_ts(const std::string& path) {
  auto ts = parse_ts(read_text(path));
  require_valid(ts, path);
  return ts;
}

/// A single TS, or a union kept as a union.
struct Input {
  std::vector<TransitionSystem> components;
  System system;
};

Input load_input(const std::string& path) {
  if (is_union_file(path)) {
    auto file = load_union(path);
    for (std::size_t i = 0; i < file.components.size(); ++i)
      require_valid(file.components.component(i), "component '" + file.components.names()[i] + "'");
    auto parts = file.components.components();
    System sys(parts);
    return {std::move(parts), std::move(sys)};
  }
  auto ts = load_ts(path);
  System sys(ts);
  return {{std::move(ts)}, std::move(sys)};
}

json region_json(const System& sys, const Region& r) {
  json members = json::array();
  for (StateId s : r.members()) members.push_back(sys.state_name(s));
  json sig = json::object();
  for (EventId e = 0; e < sys.event_count(); ++e)
    if (r.sig(e) != Sign::obey) sig[sys.event_name(e)] = value(r.sig(e));
  return {{"members", members}, {"signature", sig}};
}

json query_json(const System& sys, const SeparationQuery& q) {
  if (const auto* p = std::get_if<StatePair>(&q))
    return {{"kind", "states"}, {"first", sys.state_name(p->first)}, {"second", sys.state_name(p->second)}};
  const auto& es = std::get<EventState>(q);
  return {{"kind", "event-state"}, {"event", sys.event_name(es.event)}, {"state", sys.state_name(es.state)}};
}

std::string region_text(const System& sys, const Region& r) { return format_region(sys, r) + "\n"; }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------

Result cmd_validate(const std::string& path) {
  Result r;
  std::vector<std::pair<std::string, TransitionSystem>> items;
  if (is_union_file(path)) {
    auto file = load_union(path);
    for (std::size_t i = 0; i < file.components.size(); ++i)
      items.emplace_back(file.components.names()[i], file.components.component(i));
    items.emplace_back("joined", join(file.components, plan_of(file)));
  } else {
    items.emplace_back("ts", parse_ts(read_text(path)));
  }
  json list = json::array();
  for (const auto& [name, ts] : items) {
    const auto report = validate(ts);
    json violations = json::array();
    for (const auto& v : report.violations) {
      json states = json::array(), events = json::array(), edges = json::array();
      for (StateId s : v.states) states.push_back(ts.state_name(s));
      for (EventId e : v.events) events.push_back(ts.event_name(e));
      for (std::size_t i : v.edges) {
        const Edge& ed = ts.edge(i);
        edges.push_back({ts.state_name(ed.source), ts.event_name(ed.event), ts.state_name(ed.target)});
      }
      violations.push_back(
          {{"invariant", std::string(to_string(v.invariant))}, {"states", states}, {"events", events}, {"edges", edges}});
    }
    list.push_back({{"name", name}, {"valid", report.ok()}, {"violations", violations}});
    if (items.size() > 1) r.text += name + ": ";
    r.text += report.ok() ? "valid\n" : "invalid\n" + describe(ts, report);
    if (!report.ok()) r.code = fails;
  }
  r.data = {{"valid", r.code == holds}, {"items", list}};
  return r;
}

Result cmd_classify(const std::string& path) {
  TransitionSystem ts = is_union_file(path) ? [&] {
    auto file = load_union(path);
    return join(file.components, plan_of(file));
  }()
                                            : load_ts(path);
  const auto c = classify(ts);
  Result r;
  r.text = "k=" + std::to_string(c.manifoldness) + " g=" + std::to_string(c.degree) +
           (c.linear ? " linear\n" : " nonlinear\n");
  r.data = {{"k", c.manifoldness}, {"g", c.degree}, {"linear", c.linear}, {"states", ts.state_count()},
            {"events", ts.event_count()}, {"edges", ts.edge_count()}};
  return r;
}

Result cmd_check(const std::string& property, const std::string& path, bool exhaustive, double timeout) {
  const Input in = load_input(path);
  DecideOptions opts;
  opts.exhaustive = exhaustive;
  opts.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
  Result r;
  Verdict v;
  try {
    v = property == "ssp" ? has_ssp(in.system, opts) : property == "essp" ? has_essp(in.system, opts)
                                                                          : is_feasible(in.system, opts);
  } catch (const Timeout& t) {
    r.code = timed_out;
    r.text = "timeout after " + std::to_string(t.checked()) + " checked queries\n";
    r.data = {{"property", property}, {"timeout", true}, {"checked", t.checked()}};
    return r;
  }
  r.code = v.holds ? holds : fails;
  json regions = json::array(), counterexamples = json::array();
  r.text = std::string(v.holds ? "holds" : "fails") + "\nchecked " + std::to_string(v.checked) + " queries, " +
           std::to_string(v.solver_calls) + " solver calls\n";
  if (v.holds) {
    for (const auto& reg : v.regions) {
      r.text += region_text(in.system, reg);
      regions.push_back(region_json(in.system, reg));
    }
  } else {
    for (const auto& q : v.counterexamples) {
      r.text += "counterexample: " + format_query(in.system, q) + "\n";
      counterexamples.push_back(query_json(in.system, q));
    }
  }
  r.data = {{"property", property}, {"holds", v.holds},           {"checked", v.checked},
            {"solver_calls", v.solver_calls}, {"regions", regions}, {"counterexamples", counterexamples}};
  return r;
}

Result cmd_separator(const std::string& path, std::size_t i, std::size_t j) {
  const auto ts = load_ts(path);
  const SecondOccurrenceIndex index(ts);
  const auto res = separator(index, i, j);
  const System sys(ts);
  Result r;
  json data = {{"i", i}, {"j", j}, {"exit", nullptr}, {"enter", nullptr}, {"region", nullptr}};
  if (res.exit) data["exit"] = ts.event_name(*res.exit);
  if (res.enter) data["enter"] = ts.event_name(*res.enter);
  if (res.failed()) {
    r.code = fails;
    r.text = "no separator\n";
  } else {
    if (res.exit) r.text += "exit: " + ts.event_name(*res.exit) + "\n";
    if (res.enter) r.text += "enter: " + ts.event_name(*res.enter) + "\n";
    if (auto reg = induced_region(ts, res)) {
      r.text += region_text(sys, *reg);
      data["region"] = region_json(sys, *reg);
    }
  }
  r.data = data;
  return r;
}

// On a TS without the SSP the separator may also fail for separable pairs;
// every failing pair is therefore checked again with the general solver.
Result cmd_linear2(const std::string& path, bool exhaustive) {
  const auto ts = load_ts(path);
  const auto v = linear2_ssp(ts, exhaustive);
  const auto order = linear_states(ts);
  const System sys(ts);
  Result r;
  json failures = json::array();
  r.code = v.holds ? holds : fails;
  r.text = v.holds ? "holds\n" : "fails\n";
  for (const auto& [p, res] : v.witnesses) {
    const StateId s = order[p.first], t = order[p.second];
    const auto reg = res.failed() ? std::nullopt : induced_region(ts, res);
    if (reg && reg->contains(s) != reg->contains(t)) continue;
    const bool separable_anyway = separable(sys, s, t).has_value();
    r.text += std::string(separable_anyway ? "separator fails: (" : "non-separable: (") + ts.state_name(s) + ", " +
              ts.state_name(t) + ")\n";
    failures.push_back({{"first", ts.state_name(s)}, {"second", ts.state_name(t)}, {"separable", separable_anyway}});
  }
  r.data = {{"holds", v.holds}, {"pairs", v.witnesses.size()}, {"failures", failures}};
  return r;
}

Result cmd_synthesize(const std::string& path, bool all_regions, std::size_t cap, const std::string& out_path,
                      double timeout) {
  const auto ts = load_ts(path);
  const System sys(ts);
  std::vector<Region> regions;
  Result r;
  if (all_regions) {
    regions = enumerate_regions(sys, cap);
  } else {
    DecideOptions opts;
    opts.deadline = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                           std::chrono::duration<double>(timeout));
    Verdict v;
    try {
      v = is_feasible(sys, opts);
    } catch (const Timeout& t) {
      r.code = timed_out;
      r.text = "timeout after " + std::to_string(t.checked()) + " checked queries\n";
      r.data = {{"timeout", true}, {"checked", t.checked()}};
      return r;
    }
    if (!v.holds) {
      r.code = fails;
      r.text = "not feasible\ncounterexample: " + format_query(sys, *v.counterexample()) + "\n";
      r.data = {{"feasible", false}, {"counterexample", query_json(sys, *v.counterexample())}};
      return r;
    }
    regions = v.regions;
  }
  const auto net = synthesize(ts, regions);
  const auto rg = reachability_graph(net);
  const bool iso = ts_isomorphic(ts, rg.ts);
  const std::string text = serialize_ens(net);
  if (!out_path.empty()) {
    write_text(out_path, text);
    r.text = "places " + std::to_string(net.place_count()) + "\nreachability graph " +
             (iso ? "isomorphic" : "not isomorphic") + "\n";
  } else {
    r.text = text;
  }
  if (!iso) r.code = fails;
  r.data = {{"places", net.place_count()}, {"transitions", net.transition_count()}, {"isomorphic", iso},
            {"net", text}};
  return r;
}

Result cmd_reach_graph(const std::string& path, const std::string& against, const std::string& out_path) {
  const auto net = parse_ens(read_text(path));
  const auto rg = reachability_graph(net);
  Result r;
  const std::string text = serialize_ts(rg.ts);
  if (!out_path.empty())
    write_text(out_path, text);
  else
    r.text = text;
  if (!rg.report.ok()) r.text += "# " + describe(rg.ts, rg.report);
  r.data = {{"states", rg.ts.state_count()}, {"edges", rg.ts.edge_count()}, {"valid", rg.report.ok()}, {"ts", text}};
  if (!against.empty()) {
    const bool iso = ts_isomorphic(load_ts(against), rg.ts);
    r.text += iso ? "isomorphic\n" : "not isomorphic\n";
    r.data["isomorphic"] = iso;
    if (!iso) r.code = fails;
  }
  return r;
}

Result cmd_reduce(const std::string& construction, const std::string& in_path, const std::string& out_dir,
                  bool unchecked) {
  GadgetInstance inst = [&] {
    if (construction == "linear3-essp" || construction == "2grade2-essp") {
      const auto f = parse_cnf3(read_text(in_path), !unchecked);
      return construction == "linear3-essp" ? build_linear3_essp(f) : build_2grade2_essp(f);
    }
    const auto ts = load_ts(in_path);
    return construction == "linear3-ssp" ? build_linear3_ssp(ts) : build_2grade2_ssp(ts);
  }();
  const auto joined = inst.joined();
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + out_dir + "'");
  std::string manifest = "construction " + construction + "\n";
  json keys = json::array();
  if (inst.key_query) {
    manifest += "query " + inst.key_query->event + " " + inst.key_query->state + "\n";
    keys.push_back({{"event", inst.key_query->event}, {"state", inst.key_query->state}});
  }
  for (const auto& p : inst.key_pairs) {
    manifest += "pair " + p.first + " " + p.second + "\n";
    keys.push_back({{"first", p.first}, {"second", p.second}});
  }
  write_text(dir / "instance.union", serialize_union(inst.components, inst.plan));
  write_text(dir / "instance.ts", serialize_ts(joined));
  write_text(dir / "instance.key", manifest);
  const auto c = classify(joined);
  Result r;
  r.text = "components " + std::to_string(inst.components.size()) + "\nstates " +
           std::to_string(joined.state_count()) + "\nk=" + std::to_string(c.manifoldness) +
           " g=" + std::to_string(c.degree) + (c.linear ? " linear\n" : " nonlinear\n") + manifest;
  r.data = {{"construction", construction},
            {"components", inst.components.size()},
            {"states", joined.state_count()},
            {"k", c.manifoldness},
            {"g", c.degree},
            {"linear", c.linear},
            {"keys", keys},
            {"files", {"instance.union", "instance.ts", "instance.key"}}};
  return r;
}

Result cmd_models(const std::string& path, bool unchecked) {
  const auto f = parse_cnf3(read_text(path), !unchecked);
  const auto models = find_one_in_three_models(f);
  Result r;
  json list = json::array();
  for (const auto& m : models) {
    r.text += format_model(m) + "\n";
    list.push_back(m);
  }
  if (models.empty()) {
    r.code = fails;
    r.text = "no model\n";
  }
  r.data = {{"models", list}};
  return r;
}

Result cmd_export_dot(const std::string& path, const std::string& highlight, const std::string& name) {
  Result r;
  if (fs::path(path).extension() == ".ens") {
    r.text = export_dot(parse_ens(read_text(path)), name.empty() ? "net" : name);
  } else {
    const auto ts = parse_ts(read_text(path));
    DotOptions opts;
    if (!name.empty()) opts.name = name;
    if (!highlight.empty()) {
      Bitset h(ts.state_count());
      for (const auto& s : split_list(highlight)) h.set(ts.state(s));
      opts.highlight = h;
    }
    r.text = export_dot(ts, opts);
  }
  r.data = {{"dot", r.text}};
  return r;
}

Result cmd_corpus(const std::string& kind, std::size_t count, std::size_t states, std::size_t alphabet,
                  std::size_t fold, std::size_t extra, std::uint64_t seed, const std::string& out_dir) {
  std::vector<TransitionSystem> items;
  if (kind == "chains") {
    items = all_linear(states - 1, alphabet, fold);
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i)
      items.push_back(kind == "linear" ? random_linear(rng, states, alphabet, fold)
                                       : random_ts(rng, states, alphabet, extra));
  }
  Result r;
  json files = json::array();
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + out_dir + "'");
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string name = std::to_string(i);
    name = std::string(name.size() < 4 ? 4 - name.size() : 0, '0') + name + ".ts";
    write_text(dir / name, serialize_ts(items[i]));
    files.push_back(name);
    r.text += name + "\n";
  }
  r.data = {{"kind", kind}, {"seed", seed}, {"files", files}};
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Region-based analysis and synthesis of transition systems", "ens");
  app.require_subcommand(1);
  std::string format = "text";
  double timeout = 600;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--timeout", timeout, "Deadline in seconds for whole-instance checks")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string path, path2, out_path, highlight, name, construction, kind = "linear";
  bool exhaustive = false, unchecked = false, all_regions = false;
  std::size_t cap = 22, i = 0, j = 0, count = 10, states = 5, alphabet = 3, fold = 3, extra = 2;
  std::uint64_t seed = 1;

  auto* validate_cmd = app.add_subcommand("validate", "Check the transition system invariants");
  validate_cmd->add_option("file", path, ".ts or .union file")->required();
  auto* classify_cmd = app.add_subcommand("classify", "Report k-fold, g-grade and linearity");
  classify_cmd->add_option("file", path)->required();

  std::map<CLI::App*, std::string> checks;
  for (const auto& [cmd, prop] : {std::pair{"check-ssp", "ssp"}, {"check-essp", "essp"}, {"check-feasible", "feasible"}}) {
    auto* c = app.add_subcommand(cmd, std::string("Decide ") + prop);
    c->add_option("file", path, ".ts or .union file")->required();
    c->add_flag("--exhaustive", exhaustive, "Report every failing query");
    checks[c] = prop;
  }
  auto* sep_cmd = app.add_subcommand("separator", "Separating events for chain states s_i, s_j (linear 2-fold)");
  sep_cmd->add_option("file", path)->required();
  sep_cmd->add_option("i", i)->required();
  sep_cmd->add_option("j", j)->required();
  auto* lin2_cmd = app.add_subcommand("linear2-ssp", "SSP of a linear 2-fold TS without a general solver");
  lin2_cmd->add_option("file", path)->required();
  lin2_cmd->add_flag("--exhaustive", exhaustive);
  auto* synth_cmd = app.add_subcommand("synthesize", "Synthesize an elementary net system");
  synth_cmd->add_option("file", path)->required();
  synth_cmd->add_flag("--all-regions", all_regions, "Use every region instead of a witness set");
  synth_cmd->add_option("--cap", cap, "State limit for region enumeration");
  synth_cmd->add_option("--out", out_path, "Write the .ens file here");
  auto* rg_cmd = app.add_subcommand("reach-graph", "Reachability graph of a .ens net");
  rg_cmd->add_option("file", path)->required();
  rg_cmd->add_option("--against", path2, "Compare with this .ts up to isomorphism");
  rg_cmd->add_option("--out", out_path);
  auto* reduce_cmd = app.add_subcommand("reduce", "Generate a reduction instance");
  reduce_cmd->add_option("--construction", construction)
      ->required()
      ->check(CLI::IsMember({"linear3-essp", "linear3-ssp", "2grade2-essp", "2grade2-ssp"}));
  reduce_cmd->add_option("--in", path, ".cnf3 formula or .ts")->required();
  reduce_cmd->add_option("--out", out_path, "Output directory")->required();
  reduce_cmd->add_flag("--unchecked", unchecked, "Accept formulas that are not cubic");
  auto* models_cmd = app.add_subcommand("models", "One-in-three models of a .cnf3 formula");
  models_cmd->add_option("file", path)->required();
  models_cmd->add_flag("--unchecked", unchecked);
  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of a .ts or .ens file");
  dot_cmd->add_option("file", path)->required();
  dot_cmd->add_option("--highlight", highlight, "Comma-separated states to shade");
  dot_cmd->add_option("--name", name, "Graph name");
  auto* corpus_cmd = app.add_subcommand("corpus", "Write a corpus of generated transition systems");
  corpus_cmd->add_option("--kind", kind)->check(CLI::IsMember({"linear", "random", "chains"}));
  corpus_cmd->add_option("--count", count);
  corpus_cmd->add_option("--states", states)->check(CLI::Range(2, 1000));
  corpus_cmd->add_option("--alphabet", alphabet)->check(CLI::Range(1, 26));
  corpus_cmd->add_option("--fold", fold)->check(CLI::Range(1, 100));
  corpus_cmd->add_option("--extra", extra);
  corpus_cmd->add_option("--seed", seed);
  corpus_cmd->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? holds : input_error;
  }

  Result r;
  try {
    auto* sub = app.get_subcommands().front();
    if (sub == validate_cmd) r = cmd_validate(path);
    else if (sub == classify_cmd) r = cmd_classify(path);
    else if (checks.count(sub)) r = cmd_check(checks[sub], path, exhaustive, timeout);
    else if (sub == sep_cmd) r = cmd_separator(path, i, j);
    else if (sub == lin2_cmd) r = cmd_linear2(path, exhaustive);
    else if (sub == synth_cmd) r = cmd_synthesize(path, all_regions, cap, out_path, timeout);
    else if (sub == rg_cmd) r = cmd_reach_graph(path, path2, out_path);
    else if (sub == reduce_cmd) r = cmd_reduce(construction, path, out_path, unchecked);
    else if (sub == models_cmd) r = cmd_models(path, unchecked);
    else if (sub == dot_cmd) r = cmd_export_dot(path, highlight, name);
    else r = cmd_corpus(kind, count, states, alphabet, fold, extra, seed, out_path);
  } catch (const Timeout& t) {
    err << "ens: " << t.what() << "\n";
    return timed_out;
  } catch (const Error& e) {
    err << "ens: " << e.what() << "\n";
    return input_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ens: " << e.what() << "\n";
    return input_error;
  }

  if (format == "json") {
    r.data["exit_code"] = r.code;
    out << r.data.dump(2) << "\n";
  } else {
    out << r.text;
  }
  return r.code;
}

}  // namespace ens::cli
