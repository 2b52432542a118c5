#include "z2n/tasks.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "z2n/examples.hpp"
#include "z2n/gns.hpp"

namespace z2n::io {

namespace {

TaskResult result(int rank, Report report) {
  TaskResult r;
  r.rank = rank;
  r.report = std::move(report);
  return r;
}

double tol_or(const SessionConfig& c, double fallback) { return c.tol.value_or(fallback); }

const std::string& input(const TaskSpec& t, std::size_t k = 0) {
  if (t.inputs.size() <= k) throw InputError(t.command + ": missing input file");
  return t.inputs[k];
}

const std::string& output(const TaskSpec& t) {
  if (t.output.empty()) throw InputError(t.command + ": missing output path (-o)");
  return t.output;
}

std::optional<std::string> param(const TaskSpec& t, const std::string& key) {
  auto it = t.params.find(key);
  if (it == t.params.end()) return std::nullopt;
  return it->second;
}

long long int_param(const TaskSpec& t, const std::string& key, long long fallback) {
  const auto v = param(t, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const long long x = std::stoll(*v, &used, 0);
    if (used != v->size()) throw std::invalid_argument(*v);
    return x;
  } catch (const std::exception&) {
    throw InputError(t.command + ": parameter " + key + ": expected an integer, got \"" + *v + "\"");
  }
}

std::vector<int> int_list(const TaskSpec& t, const std::string& key) {
  std::vector<int> out;
  const auto v = param(t, key);
  if (!v) return out;
  std::stringstream ss(*v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError(t.command + ": parameter " + key + ": expected comma-separated integers");
    }
  }
  return out;
}

int rank_from_dims(const std::vector<int>& dims, const std::string& ctx) {
  int n = 0;
  while ((std::size_t{1} << n) < dims.size()) ++n;
  if (n < 1 || (std::size_t{1} << n) != dims.size()) {
    throw InputError(ctx + ": dims must list 2^n entries, one per degree in lex order");
  }
  return n;
}

std::shared_ptr<const PDFunction> pd_from_file(const std::string& path, bool validate, int* rank) {
  const json doc = read_json(path);
  const std::string schema = doc.value("schema", std::string{});
  if (schema == kTableSchema) {
    auto t = std::make_shared<TableFunction>(table_from_json(doc, validate));
    *rank = t->pair().rank();
    return t;
  }
  LoadedRep lr = rep_from_json(doc, validate);
  if (!lr.cyclic) throw InputError(path + ": cyclic_vector required to form the matrix coefficient");
  *rank = lr.rep.pair.rank();
  return std::make_shared<RepCoefficient>(lr.rep, *lr.cyclic, *lr.cyclic);
}

GNSOptions gns_options(const SessionConfig& c) {
  GNSOptions o;
  o.level_cap = c.level_cap;
  if (c.tol) o.tol = *c.tol;
  return o;
}

std::string join(const std::vector<double>& xs) {
  std::ostringstream s;
  s.precision(6);
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? ", " : "") << xs[i];
  return s.str();
}

// ---------------------------------------------------------------------------
// Commands

TaskResult check_grading(const SessionConfig& c, const TaskSpec& t) {
  TaskResult r;
  r.rank = static_cast<int>(int_param(t, "n", c.rank));
  if (r.rank < 1 || r.rank > 12) throw InputError("check-grading: n must lie in [1, 12]");
  std::optional<Character> twist;
  const long long mask = int_param(t, "twist_mask", 0);
  if (mask < 0 || mask >= (1ll << r.rank)) throw InputError("check-grading: twist_mask must be below 2^n");
  if (mask != 0) twist = Character(r.rank, static_cast<std::uint32_t>(mask));
  r.report = Report("check_grading");
  const IdentityReport coc = verify_alpha_cocycle(r.rank, twist);
  const IdentityReport lift = verify_lifting_relation(r.rank);
  for (const IdentityReport* id : {&coc, &lift}) {
    std::string detail = std::to_string(id->pairs_checked) + " pairs";
    if (!id->violations.empty()) {
      const PairViolation& v = id->violations.front();
      detail += "; first violation at (" + v.a.str() + ", " + v.b.str() + "): " + v.detail;
    }
    r.report.add(id == &coc ? "alpha_cocycle" : "lifting_relation",
                 static_cast<double>(id->violations.size()), 0.0, detail);
  }
  return r;
}

TaskResult check_algebra(const SessionConfig& c, const TaskSpec& t) {
  const ColorLieAlgebra l = load_algebra(input(t), false);
  return result(l.rank(), check_axioms(l, tol_or(c, 1e-9)));
}

TaskResult check_perfect(const SessionConfig& c, const TaskSpec& t) {
  const ColorLieAlgebra l = load_algebra(input(t), !c.skip_validate);
  return result(l.rank(), check_perfectness(l).to_report());
}

TaskResult check_rep(const SessionConfig& c, const TaskSpec& t) {
  const LoadedRep lr = load_rep(input(t), !c.skip_validate);
  TaskResult r = result(lr.rep.pair.rank(), check_unitary_rep(lr.rep, tol_or(c, kRepTol)));
  if (lr.cyclic) r.report.merge(check_cyclic(lr.rep, *lr.cyclic, 1e-9, c.level_cap), "cyclic_vector.");
  return r;
}

TaskResult check_prerep(const SessionConfig& c, const TaskSpec& t) {
  const LoadedRep lr = load_rep(input(t), !c.skip_validate);
  return result(lr.rep.pair.rank(), check_pre_rep(lr.rep, tol_or(c, kRepTol)));
}

TaskResult stability(const SessionConfig& c, const TaskSpec& t) {
  const LoadedRep lr = load_rep(input(t), !c.skip_validate);
  TaskResult r = result(lr.rep.pair.rank(), Report("stability_extend"));
  const PerfectnessReport pr = check_perfectness(lr.rep.pair.algebra());
  r.report.merge(pr.to_report(), "perfectness.");
  if (!pr.passed()) {
    std::string where;
    for (const SectorRank& s : pr.sectors) {
      if (!s.saturated()) {
        where += (where.empty() ? "" : ", ") + s.sector.str() + " (rank " + std::to_string(s.rank) +
                 " < dim " + std::to_string(s.dim) + ")";
      }
    }
    r.error =
        "extension hypothesis fails: every even-like degree a != 0 must satisfy g_a = sum of "
        "[g_b, g_c] over odd-like b, c with bc = a; unsaturated: " + where;
    r.exit_code = kExitFail;
    return r;
  }
  r.report.merge(check_pre_rep(lr.rep, kRepTol), "input.");
  ExtensionOptions eo;
  eo.tol = tol_or(c, kExtensionTol);
  eo.parallel = true;
  const ExtensionResult ext = stability_extend(lr.rep, eo);
  r.report.merge(ext.report);
  write_json(output(t), rep_to_json(ext.rep, lr.cyclic));
  r.written.push_back(t.output);
  return r;
}

TaskResult check_pd(const SessionConfig& c, const TaskSpec& t) {
  TaskResult r;
  const auto psi = pd_from_file(input(t), !c.skip_validate, &r.rank);
  const int level = static_cast<int>(int_param(t, "level", 2));
  if (level < 0 || level > c.level_cap) throw InputError("check-pd: level must lie in [0, level_cap]");
  std::vector<GroupWord> groups;
  for (int g = 0; g < psi->pair().num_extra(); ++g) groups.push_back(GroupWord::generator(g));
  const SampleSet samples = pbw_sample_set(psi->pair(), groups, level);
  r.report = check_positive_definite(*psi, samples, tol_or(c, 1e-9));
  r.report.note(std::to_string(samples.size()) + " samples, PBW level <= " + std::to_string(level));
  return r;
}

TaskResult gns_build(const SessionConfig& c, const TaskSpec& t) {
  TaskResult r;
  const auto psi = pd_from_file(input(t), !c.skip_validate, &r.rank);
  const GNSResult res = gns_construct(*psi, gns_options(c));
  r.report = res.report;
  r.report.note("reconstructed dimension " + std::to_string(res.rep.dim()) + " at level " +
                std::to_string(res.level_used));
  r.report.note("retained spectrum: " + join(res.retained_spectrum));
  write_json(output(t), rep_to_json(res.rep, res.cyclic));
  r.written.push_back(t.output);
  return r;
}

TaskResult gns_round(const SessionConfig& c, const TaskSpec& t) {
  const LoadedRep lr = load_rep(input(t), !c.skip_validate);
  if (!lr.cyclic) throw InputError(input(t) + ": cyclic_vector required");
  const double eq_tol = c.tol.value_or(1e-6);
  return result(lr.rep.pair.rank(), gns_roundtrip(lr.rep, *lr.cyclic, gns_options(c), eq_tol));
}

TaskResult twist(const SessionConfig& c, const TaskSpec& t) {
  const LoadedRep lr = load_rep(input(t), !c.skip_validate);
  const int n = lr.rep.pair.rank();
  const long long mask = int_param(t, "mask", -1);
  if (mask < 0 || mask >= (1ll << n)) throw InputError("twist-rep: --mask must lie in [0, 2^n)");
  const UnitaryRep tw = twist_rep(lr.rep, Character(n, static_cast<std::uint32_t>(mask)));
  TaskResult r = result(n, check_unitary_rep(tw, tol_or(c, kRepTol)));
  r.report.operation = "twist_rep";
  r.report.note("checks run with alpha' = chi alpha, chi mask " + std::to_string(mask));
  write_json(output(t), rep_to_json(tw, lr.cyclic));
  r.written.push_back(t.output);
  return r;
}

TaskResult generate(const SessionConfig& c, const TaskSpec& t) {
  const std::string name = input(t);
  TaskResult r = result(0, Report("generate " + name));
  const std::string out = output(t);
  json doc;
  if (name == "glV") {
    std::vector<int> dims = int_list(t, "dims");
    if (dims.empty()) dims = {1, 1};
    const int n = rank_from_dims(dims, "generate glV");
    if (std::any_of(dims.begin(), dims.end(), [](int d) { return d < 0; })) {
      throw InputError("generate glV: dims must be nonnegative");
    }
    doc = algebra_to_json(glV(GradedSpace(n, dims)));
  } else if (name == "counterexample-n2") {
    const std::string kind = param(t, "kind").value_or("algebra");
    if (kind == "algebra") {
      doc = algebra_to_json(counterexample_algebra());
    } else if (kind == "prerep") {
      doc = rep_to_json(counterexample_prerep(), std::nullopt, true);
    } else {
      throw InputError("generate counterexample-n2: kind must be algebra or prerep");
    }
  } else if (name == "clifford-n1") {
    doc = rep_to_json(clifford_rep(), clifford_cyclic_vector());
  } else if (name == "random-rep") {
    RandomRepOptions o;
    o.rank = static_cast<int>(int_param(t, "n", c.rank));
    o.dims = int_list(t, "dims");
    o.max_total_dim = static_cast<int>(int_param(t, "max_dim", 4));
    o.extra_generators = static_cast<int>(int_param(t, "extras", 1));
    o.plus_trivial = int_param(t, "plus_trivial", 0) != 0;
    o.require_perfect = int_param(t, "perfect", 0) != 0;
    if (o.rank < 1 || o.rank > 4) throw InputError("generate random-rep: n must lie in [1, 4]");
    if (!o.dims.empty() && o.dims.size() != (std::size_t{1} << o.rank)) {
      throw InputError("generate random-rep: dims must list 2^n entries");
    }
    const std::uint64_t seed = static_cast<std::uint64_t>(int_param(t, "seed", static_cast<long long>(c.seed)));
    const RandomRep rr = random_rep(seed, o);
    doc = rep_to_json(rr.rep, rr.cyclic);
  } else {
    throw InputError("generate: unknown example \"" + name + "\"");
  }
  write_json(out, doc);
  r.written.push_back(out);

  // reload and validate what was written
  const json back = read_json(out);
  const std::string schema = back.at("schema").get<std::string>();
  r.rank = back.at("rank").get<int>();
  if (schema == kAlgebraSchema) {
    const ColorLieAlgebra l = algebra_from_json(back, false);
    r.report.add_flag("reload", true, std::to_string(l.dim()) + " basis elements");
    r.report.merge(check_axioms(l), "algebra.");
  } else {
    const LoadedRep lr = rep_from_json(back, true);
    r.report.add_flag("reload", true, "dimension " + std::to_string(lr.rep.dim()));
    if (schema == kPreRepSchema) {
      r.report.merge(check_pre_rep(lr.rep), "prerep.");
    } else {
      r.report.merge(check_unitary_rep(lr.rep), "rep.");
    }
  }
  return r;
}

TaskResult batch(const SessionConfig& c, const TaskSpec& t) {
  const std::vector<TaskSpec> tasks = batch_from_json(read_json(input(t)));
  const std::vector<TaskResult> results = run_batch(c, tasks, int_param(t, "parallel", 1) != 0);
  TaskResult r = result(0, Report("batch"));
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TaskResult& x = results[i];
    const std::string prefix = "task" + std::to_string(i) + ":" + x.command + ".";
    r.report.merge(x.report, prefix);
    r.report.add_flag(prefix + "exit_code", x.exit_code == kExitPass,
                      std::to_string(x.exit_code) + (x.error.empty() ? "" : ": " + x.error));
    r.exit_code = std::max(r.exit_code, x.exit_code);
    r.rank = std::max(r.rank, x.rank);
    r.written.insert(r.written.end(), x.written.begin(), x.written.end());
  }
  return r;
}

using Handler = TaskResult (*)(const SessionConfig&, const TaskSpec&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"check-grading", check_grading}, {"check-algebra", check_algebra},
      {"check-perfect", check_perfect}, {"check-rep", check_rep},
      {"check-prerep", check_prerep},   {"stability-extend", stability},
      {"check-pd", check_pd},           {"gns-construct", gns_build},
      {"gns-roundtrip", gns_round},     {"twist-rep", twist},
      {"generate", generate},           {"batch", batch},
  };
  return h;
}

}  // namespace

SessionConfig config_from_json(const json& doc, SessionConfig base) {
  if (!doc.is_object()) throw InputError("config: expected an object");
  if (doc.contains("rank")) base.rank = doc["rank"].get<int>();
  if (doc.contains("tol")) base.tol = doc["tol"].get<double>();
  if (doc.contains("level_cap")) base.level_cap = doc["level_cap"].get<int>();
  if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("skip_validate")) base.skip_validate = doc["skip_validate"].get<bool>();
  if (doc.contains("format")) {
    const std::string f = doc["format"].get<std::string>();
    if (f != "json" && f != "text") throw InputError("config.format: expected json or text");
    base.format = f == "json" ? Format::Json : Format::Text;
  }
  if (base.rank < 1) throw InputError("config.rank: must be >= 1");
  if (base.tol && !(*base.tol > 0.0)) throw InputError("config.tol: must be > 0");
  if (base.level_cap < 0) throw InputError("config.level_cap: must be >= 0");
  return base;
}

SessionConfig load_config(const std::filesystem::path& path, SessionConfig base) {
  try {
    return config_from_json(read_json(path), base);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, h] : handlers()) v.push_back(name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"glV", "counterexample-n2", "clifford-n1", "random-rep"};
  return names;
}

TaskResult run_task(const SessionConfig& config, const TaskSpec& task) {
  TaskResult r;
  try {
    auto it = std::find_if(handlers().begin(), handlers().end(),
                           [&](const auto& h) { return h.first == task.command; });
    if (it == handlers().end()) throw InputError("unknown command \"" + task.command + "\"");
    r = it->second(config, task);
    if (r.exit_code == kExitPass && !r.report.passed()) r.exit_code = kExitFail;
  } catch (const InputError& e) {
    r.exit_code = kExitInput;
    r.error = e.what();
  } catch (const json::exception& e) {
    r.exit_code = kExitInput;
    r.error = std::string("malformed document: ") + e.what();
  } catch (const std::invalid_argument& e) {
    r.exit_code = kExitInput;
    r.error = e.what();
  } catch (const std::out_of_range& e) {
    r.exit_code = kExitInput;
    r.error = e.what();
  } catch (const PerfectnessError& e) {
    r.exit_code = kExitFail;
    r.error = e.what();
  } catch (const std::runtime_error& e) {
    r.exit_code = kExitFail;
    r.error = e.what();
  }
  r.command = task.command;
  if (r.report.operation.empty()) r.report.operation = task.command;
  return r;
}

std::vector<TaskResult> run_batch(const SessionConfig& config, const std::vector<TaskSpec>& tasks,
                                  bool parallel) {
  std::vector<TaskResult> out(tasks.size());
  if (!parallel) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = run_task(config, tasks[i]);
    return out;
  }
  std::vector<std::future<TaskResult>> futures;
  for (const TaskSpec& t : tasks) {
    futures.push_back(std::async(std::launch::async, [&config, t] { return run_task(config, t); }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i) out[i] = futures[i].get();
  return out;
}

std::vector<TaskSpec> batch_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("schema", std::string{}) != "z2n.batch/1") {
    throw InputError("batch.schema: expected \"z2n.batch/1\"");
  }
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) throw InputError("batch.tasks: expected an array");
  std::vector<TaskSpec> out;
  for (std::size_t i = 0; i < doc["tasks"].size(); ++i) {
    const json& tj = doc["tasks"][i];
    const std::string f = "batch.tasks[" + std::to_string(i) + "]";
    if (!tj.is_object() || !tj.contains("command") || !tj["command"].is_string()) {
      throw InputError(f + ".command: missing");
    }
    TaskSpec t;
    t.command = tj["command"].get<std::string>();
    if (t.command == "batch") throw InputError(f + ".command: nested batches are not supported");
    if (tj.contains("inputs")) t.inputs = tj["inputs"].get<std::vector<std::string>>();
    if (tj.contains("params")) {
      for (const auto& [k, v] : tj["params"].items()) t.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (tj.contains("output")) t.output = tj["output"].get<std::string>();
    out.push_back(std::move(t));
  }
  return out;
}

json result_to_json(const TaskResult& r) {
  json doc = {{"command", r.command},
              {"exit_code", r.exit_code},
              {"report", report_to_json(r.report, r.rank)},
              {"written", r.written}};
  if (!r.error.empty()) doc["error"] = r.error;
  return doc;
}

std::string format_result(const TaskResult& r, Format format) {
  if (format == Format::Json) return result_to_json(r).dump(2) + "\n";
  std::string s = r.command + ": exit " + std::to_string(r.exit_code) + "\n";
  if (!r.error.empty()) s += "error: " + r.error + "\n";
  s += r.report.text() + "\n";
  for (const auto& w : r.written) s += "wrote " + w + "\n";
  return s;
}

}  // namespace z2n::io
