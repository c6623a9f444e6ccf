#include "pppt/cli.hpp"

#include "pppt/bayesnet.hpp"
#include "pppt/bayesnet_io.hpp"
#include "pppt/deciders.hpp"
#include "pppt/errors.hpp"
#include "pppt/formula.hpp"
#include "pppt/ptm.hpp"
#include "pppt/ptm_io.hpp"
#include "pppt/reductions.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pppt::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects "key: value" lines and mirrors them into the closing JSON line.
class Report {
 public:
  explicit Report(std::ostream& out, std::string command) : out_(out) { add("command", std::move(command)); }

  void add(const std::string& key, const std::string& value) {
    out_ << key << ": " << value << '\n';
    json_[key] = value;
  }
  void add(const std::string& key, std::uint64_t value) {
    out_ << key << ": " << value << '\n';
    json_[key] = value;
  }
  void add(const std::string& key, const Rational& value) { add(key, value.to_string()); }
  void add_json(const std::string& key, ordered_json value) { json_[key] = std::move(value); }
  void text(const std::string& line) { out_ << line << '\n'; }

  ~Report() { out_ << json_.dump() << '\n'; }

 private:
  std::ostream& out_;
  ordered_json json_;
};

fs::path normalized(const fs::path& p) { return fs::weakly_canonical(fs::absolute(p)); }

void guard_outputs(const std::vector<fs::path>& outputs, const std::vector<fs::path>& inputs) {
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (const auto& in : inputs) {
      if (normalized(outputs[i]) == normalized(in)) {
        throw UsageError("refusing to overwrite input file " + in.string());
      }
    }
    for (std::size_t j = i + 1; j < outputs.size(); ++j) {
      if (normalized(outputs[i]) == normalized(outputs[j])) {
        throw UsageError("two outputs share the path " + outputs[i].string());
      }
    }
  }
}

/// Companion network path for an instance file: "dir/name.json" ->
/// "dir/name.network.json".
fs::path companion_network(const fs::path& instance) {
  fs::path p = instance;
  return p.replace_extension("").string() + ".network.json";
}

/// Path of `target` as written into a document stored at `document`.
std::string reference_from(const fs::path& document, const fs::path& target) {
  const fs::path base = normalized(document).parent_path();
  return normalized(target).lexically_relative(base).generic_string();
}

bn::Assignment parse_assignment(const std::string& text) {
  bn::Assignment out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("expected NODE=OUTCOME, got \"" + item + "\"");
    }
    if (!out.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
      throw UsageError("node listed twice in \"" + text + "\"");
    }
  }
  return out;
}

std::string format_assignment(const bn::Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) out += (out.empty() ? "" : ",") + k + "=" + v;
  return out.empty() ? "(none)" : out;
}

std::string fixed(double value, int digits = 6) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << value;
  return ss.str();
}

struct LoadedInstance {
  bn::InstanceDocument doc;
  bn::PromiseInstance instance;
};

LoadedInstance load_instance(const fs::path& path) {
  auto doc = bn::instance_document_from_json(bn::parse_json(bn::read_text_file(path)));
  auto net = bn::parse_network(bn::read_text_file(path.parent_path() / doc.network));
  bn::PromiseInstance inst{std::move(net), doc.h, doc.e, doc.q, doc.epsilon, doc.gap_kind};
  bn::validate_instance(inst);
  return {std::move(doc), std::move(inst)};
}

ptm::Machine load_machine(const fs::path& path) { return ptm::parse_machine(bn::read_text_file(path)); }

void write_compiled(const reductions::CompiledInstance& c, const fs::path& instance_path,
                    const fs::path& network_path) {
  bn::write_text_file(network_path, bn::serialize_network(c.network));
  bn::InstanceDocument doc;
  doc.network = reference_from(instance_path, network_path);
  doc.query_node = c.query_node;
  doc.accept_outcome = c.accept_outcome;
  doc.q = c.q;
  doc.k = c.k;
  bn::write_text_file(instance_path, bn::dump(bn::to_json(doc)));
}

// ---------------------------------------------------------------- commands

struct CompileOptions {
  std::string machine, input, out, network_out;
  std::size_t steps = 0;
  unsigned k = 1;
};

int cmd_compile(const CompileOptions& o, std::ostream& out) {
  const fs::path instance_path = o.out;
  const fs::path network_path = o.network_out.empty() ? companion_network(instance_path) : fs::path(o.network_out);
  guard_outputs({instance_path, network_path}, {o.machine});

  const auto desc = ptm::description_from_json(bn::parse_json(bn::read_text_file(o.machine)));
  const auto lint = ptm::lint(desc);
  if (!lint.ok()) throw ValidationError(lint.errors);
  const auto m = ptm::Machine::build(desc);
  const auto word = ptm::parse_word(o.input);
  const auto c = reductions::compile_ptm_to_bn(word, o.steps, m, o.k);
  write_compiled(c, instance_path, network_path);

  Report r(out, "compile-ptm");
  r.add("machine", o.machine);
  r.add("input", ptm::format_word(word));
  r.add("steps", o.steps);
  r.add("nodes", c.network.size());
  r.add("query_node", c.query_node);
  r.add("accept_outcome", c.accept_outcome);
  r.add("q", c.q);
  r.add("k", c.k);
  r.add("network", network_path.generic_string());
  r.add("instance", instance_path.generic_string());
  return kSuccess;
}

struct VerifyOptions {
  std::string machine, input, network;
  std::size_t steps = 0;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto m = load_machine(o.machine);
  const auto word = ptm::parse_word(o.input);
  const Rational exact = ptm::acceptance_probability(m, word, o.steps);

  const auto net = o.network.empty() ? reductions::compile_ptm_to_bn(word, o.steps, m, 1).network
                                     : bn::parse_network(bn::read_text_file(o.network));
  const std::string query = reductions::state_node(o.steps);
  const Rational compiled = bn::marginal(net, {{query, m.description().accept_state}});
  const bool equal = exact == compiled;

  Report r(out, "verify-compile");
  r.add("machine", o.machine);
  r.add("input", ptm::format_word(word));
  r.add("steps", o.steps);
  r.add("network", o.network.empty() ? std::string("(compiled)") : o.network);
  r.add("acceptance_probability", exact);
  r.add("network_marginal", compiled);
  r.add("result", equal ? "EQUAL" : "UNEQUAL");
  r.text(exact.to_string() + (equal ? " == " : " != ") + compiled.to_string() + (equal ? " EQUAL" : " UNEQUAL"));
  return equal ? kSuccess : kNo;
}

int cmd_validate(const std::string& file, std::ostream& out) {
  const auto doc = bn::parse_json(bn::read_text_file(file));
  std::string kind;
  std::vector<std::string> errors, warnings;

  if (doc.is_array()) {
    kind = "formula";
    (void)reductions::formula_from_json(doc);
  } else if (doc.is_object() && doc.contains("nodes")) {
    kind = "network";
    errors = bn::validate(bn::nodes_from_json(doc)).violations;
  } else if (doc.is_object() && doc.contains("transitions")) {
    kind = "machine";
    auto lint = ptm::lint(ptm::description_from_json(doc));
    errors = std::move(lint.errors);
    warnings = std::move(lint.warnings);
  } else if (doc.is_object() && doc.contains("network")) {
    kind = "instance";
    try {
      (void)load_instance(file);
    } catch (const ValidationError& e) {
      errors = e.violations();
    }
  } else {
    throw ParseError("unrecognized document: expected a network, machine, instance or formula");
  }

  Report r(out, "validate");
  r.add("file", file);
  r.add("kind", kind);
  for (const auto& w : warnings) r.text("warning: " + w);
  for (const auto& e : errors) r.text("violation: " + e);
  r.add("violations", errors.size());
  r.add_json("messages", errors);
  r.add("result", errors.empty() ? "valid" : "invalid");
  return errors.empty() ? kSuccess : kValidation;
}

struct InferOptions {
  std::string network, instance, query, evidence;
  bool exact = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 0;
};

int cmd_infer(const InferOptions& o, std::ostream& out) {
  if (o.network.empty() == o.instance.empty()) throw UsageError("give exactly one of --network and --instance");
  if (!o.exact && (!o.seed || o.trials == 0)) throw UsageError("sampling needs --seed and --trials (or use --exact)");

  std::optional<bn::Network> net;
  bn::Assignment h, e;
  if (!o.instance.empty()) {
    if (!o.query.empty() || !o.evidence.empty()) throw UsageError("--query/--evidence conflict with --instance");
    auto loaded = load_instance(o.instance);
    net.emplace(std::move(loaded.instance.network));
    h = loaded.instance.h;
    e = loaded.instance.e;
  } else {
    net.emplace(bn::parse_network(bn::read_text_file(o.network)));
    h = parse_assignment(o.query);
    e = parse_assignment(o.evidence);
  }
  (void)net->resolve(h);
  (void)net->resolve(e);

  Report r(out, "infer");
  r.add("h", format_assignment(h));
  r.add("e", format_assignment(e));
  if (o.exact) {
    const Rational p = bn::conditional(*net, h, e);
    r.add("method", "exact");
    r.add("probability", p);
    return kSuccess;
  }

  std::uint64_t retained = 0, hits = 0;
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    RandomStream stream(*o.seed, t);
    const auto sample = bn::forward_sample(*net, stream);
    if (!bn::agrees(*net, sample, e)) continue;
    ++retained;
    hits += bn::agrees(*net, sample, h);
  }
  r.add("method", "sampled");
  r.add("seed", *o.seed);
  r.add("trials", o.trials);
  r.add("retained", retained);
  if (retained == 0) {
    r.add("status", "all_samples_rejected");
    throw ZeroEvidence();
  }
  const double p = static_cast<double>(hits) / static_cast<double>(retained);
  const double half = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(retained));
  r.add("estimate", fixed(p));
  r.add("half_width", fixed(half));
  r.add("interval", "[" + fixed(std::max(0.0, p - half)) + ", " + fixed(std::min(1.0, p + half)) + "]");
  return kSuccess;
}

struct ReduceOptions {
  std::vector<std::string> or_compose;
  std::string formula_to_bn, gadgetize, out, network_out;
  unsigned k = 1;
};

int cmd_reduce(const ReduceOptions& o, std::ostream& out) {
  const int modes = !o.or_compose.empty() + !o.formula_to_bn.empty() + !o.gadgetize.empty();
  if (modes != 1) throw UsageError("choose exactly one of --or-compose, --formula-to-bn, --gadgetize");
  const fs::path out_path = o.out;

  if (!o.or_compose.empty()) {
    std::vector<fs::path> inputs(o.or_compose.begin(), o.or_compose.end());
    guard_outputs({out_path}, inputs);
    std::vector<reductions::Formula> fs_;
    for (const auto& f : o.or_compose) fs_.push_back(reductions::parse_formula(bn::read_text_file(f)));
    const auto comp = reductions::or_compose(fs_);
    bn::write_text_file(out_path, reductions::serialize_formula(comp.psi) + "\n");
    const auto count = reductions::count_satisfying(comp.psi);

    Report r(out, "reduce");
    r.add("mode", "or-compose");
    r.add("formulas", o.or_compose.size());
    r.add("fresh_variable", comp.fresh_variable);
    r.add("variables", comp.psi.variables().size());
    r.add("k", comp.k);
    r.add("satisfying", count.satisfying);
    r.add("total", count.total);
    r.add("ratio", count.ratio());
    r.add("majority", std::string(to_string(reductions::majority_satisfied(count))));
    r.add("output", out_path.generic_string());
    return kSuccess;
  }

  const fs::path network_path = o.network_out.empty() ? companion_network(out_path) : fs::path(o.network_out);

  if (!o.formula_to_bn.empty()) {
    guard_outputs({out_path, network_path}, {o.formula_to_bn});
    const auto f = reductions::parse_formula(bn::read_text_file(o.formula_to_bn));
    const auto c = reductions::formula_to_bn(f, o.k);
    write_compiled(c, out_path, network_path);

    Report r(out, "reduce");
    r.add("mode", "formula-to-bn");
    r.add("variables", f.variables().size());
    r.add("nodes", c.network.size());
    r.add("query_node", c.query_node);
    r.add("q", c.q);
    r.add("k", c.k);
    r.add("network", network_path.generic_string());
    r.add("instance", out_path.generic_string());
    return kSuccess;
  }

  const fs::path in_path = o.gadgetize;
  auto loaded = load_instance(in_path);
  guard_outputs({out_path, network_path}, {in_path, in_path.parent_path() / loaded.doc.network});
  if (!loaded.instance.e.empty()) throw UsageError("--gadgetize needs an instance without evidence");
  if (loaded.instance.gap_kind != bn::GapKind::Absolute) throw UsageError("--gadgetize needs an absolute gap");
  const auto g = reductions::cond_gadget(loaded.instance);
  bn::write_text_file(network_path, bn::serialize_network(g.instance.network));
  bn::InstanceDocument doc;
  doc.network = reference_from(out_path, network_path);
  doc.h = g.instance.h;
  doc.e = g.instance.e;
  doc.q = g.instance.q;
  doc.epsilon = g.instance.epsilon;
  doc.gap_kind = g.instance.gap_kind;
  bn::write_text_file(out_path, bn::dump(bn::to_json(doc)));

  Report r(out, "reduce");
  r.add("mode", "gadgetize");
  r.add("root", g.names.root);
  r.add("signal", g.names.signal);
  r.add("terminal", g.names.terminal);
  r.add("nodes", g.instance.network.size());
  r.add("h", format_assignment(doc.h));
  r.add("e", format_assignment(doc.e));
  r.add("q", doc.q);
  r.add("epsilon", doc.epsilon);
  r.add("network", network_path.generic_string());
  r.add("instance", out_path.generic_string());
  return kSuccess;
}

struct DecideOptions {
  std::string instance, method = "forward", machine, input, failure = "1/100", pe_lower, advantage = "1/4";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::size_t steps = 0;
  bool check_promise = false;
};

void promise_lines(Report& r, const bn::PromiseInstance& inst, std::ostream& err) {
  const Rational p = bn::query_probability(inst);
  const auto [lo, hi] = bn::gap_interval(inst);
  const bool holds = bn::check_promise(inst) == bn::PromiseStatus::Holds;
  r.add("query_probability", p);
  r.add("promise", holds ? "holds" : "violated");
  if (!holds) {
    const std::string msg = "warning: promise violated: Pr(h | e) = " + p.to_string() + " lies inside (" +
                            lo.to_string() + ", " + hi.to_string() + ")";
    r.text(msg);
    err << msg << '\n';
  }
}

int finish_decision(Report& r, const deciders::DeciderReport& report) {
  r.add("decision", std::string(to_string(report.decision)));
  r.add("trials", report.trials);
  r.add("accept_count", report.accept_count);
  if (report.retained) r.add("retained", *report.retained);
  r.add("margin", report.margin);
  if (report.exact_accept_prob) r.add("exact_accept_prob", *report.exact_accept_prob);
  r.add_json("report", deciders::to_json(report));
  if (report.status == deciders::DeciderReport::Status::AllSamplesRejected) r.add("status", "all_samples_rejected");
  return report.decision == Decision::Yes ? kSuccess : kNo;
}

int cmd_decide(const DecideOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.seed) throw UsageError("--seed is required");
  const std::uint64_t seed = *o.seed;

  if (o.method == "ptm") {
    if (o.machine.empty()) throw UsageError("--method ptm needs --machine");
    const auto m = load_machine(o.machine);
    const auto word = ptm::parse_word(o.input);
    const std::uint64_t trials = o.trials.value_or(1);
    auto trial = [&](RandomStream& s) {
      return ptm::decide_error_ptm_acceptance(word, o.steps, m, s) == Decision::Yes;
    };
    auto report = deciders::amplify(trial, Rational::parse(o.advantage), seed, trials);

    Report r(out, "decide");
    r.add("method", "ptm");
    r.add("seed", seed);
    r.add("machine", o.machine);
    r.add("input", ptm::format_word(word));
    r.add("steps", o.steps);
    if (o.check_promise) {
      const Rational p = ptm::acceptance_probability(m, word, o.steps);
      report.exact_accept_prob = p;
      r.add("acceptance_probability", p);
      if (p == Rational(1, 2)) {
        const std::string msg = "warning: acceptance probability is exactly 1/2";
        r.text(msg);
        err << msg << '\n';
      }
    }
    return finish_decision(r, report);
  }

  if (o.instance.empty()) throw UsageError("--method " + o.method + " needs --instance");
  auto loaded = load_instance(o.instance);
  const auto& inst = loaded.instance;

  if (o.method == "forward") {
    if (!inst.e.empty()) throw UsageError("--method forward needs an instance without evidence");
    if (inst.gap_kind != bn::GapKind::Absolute) throw UsageError("--method forward needs an absolute gap");
    const std::uint64_t trials = o.trials.value_or(1);
    const Rational advantage = std::min(inst.epsilon / Rational(2), Rational(1, 2));
    auto trial = [&](RandomStream& s) { return deciders::forward_sampling_decider(inst, s); };
    auto report = deciders::amplify(trial, advantage, seed, trials);

    Report r(out, "decide");
    r.add("method", "forward");
    r.add("seed", seed);
    r.add("instance", o.instance);
    if (o.check_promise) {
      promise_lines(r, inst, err);
      report.exact_accept_prob = deciders::forward_acceptance_probability(bn::query_probability(inst), inst.q);
    }
    return finish_decision(r, report);
  }

  if (o.method == "rejection") {
    std::uint64_t trials = 0;
    if (o.trials) {
      trials = *o.trials;
    } else if (!o.pe_lower.empty()) {
      trials = deciders::rejection_budget(Rational::parse(o.pe_lower), deciders::promise_margin(inst),
                                          Rational::parse(o.failure));
    } else {
      throw UsageError("--method rejection needs --trials or --pe-lower");
    }
    const auto report = deciders::rejection_sampling_decider(inst, seed, trials, Rational::parse(o.failure));

    Report r(out, "decide");
    r.add("method", "rejection");
    r.add("seed", seed);
    r.add("instance", o.instance);
    if (o.check_promise) promise_lines(r, inst, err);
    return finish_decision(r, report);
  }

  throw UsageError("unknown method \"" + o.method + "\" (forward, rejection, ptm)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and sampled inference, machine compilation and reductions", "pppt"};
  app.require_subcommand(1);

  CompileOptions compile;
  auto* c = app.add_subcommand("compile-ptm", "Compile a machine run into a network and instance file");
  c->add_option("--machine", compile.machine, "Machine JSON file")->required();
  c->add_option("--input", compile.input, "Input word (\"101\" or \"a,b\")");
  c->add_option("--steps", compile.steps, "Number of transitions")->required();
  c->add_option("--k", compile.k, "Gap parameter (eps = 2^-k)")->check(CLI::PositiveNumber);
  c->add_option("--out", compile.out, "Instance file to write")->required();
  c->add_option("--network-out", compile.network_out, "Network file (default: <out>.network.json)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify-compile", "Compare a compiled network with exact machine enumeration");
  v->add_option("--machine", verify.machine, "Machine JSON file")->required();
  v->add_option("--input", verify.input, "Input word");
  v->add_option("--steps", verify.steps, "Number of transitions")->required();
  v->add_option("--network", verify.network, "Check this network instead of compiling one");

  std::string validate_file;
  auto* val = app.add_subcommand("validate", "Check a network, machine, instance or formula file");
  val->add_option("file", validate_file, "File to check")->required();

  InferOptions infer;
  auto* inf = app.add_subcommand("infer", "Compute or estimate Pr(h | e)");
  inf->add_option("--network", infer.network, "Network JSON file");
  inf->add_option("--instance", infer.instance, "Instance JSON file (supplies h and e)");
  inf->add_option("--query", infer.query, "Hypothesis NODE=OUTCOME[,...]");
  inf->add_option("--evidence", infer.evidence, "Evidence NODE=OUTCOME[,...]");
  inf->add_flag("--exact", infer.exact, "Exact enumeration");
  inf->add_option("--seed", infer.seed, "Seed for sampling");
  inf->add_option("--trials", infer.trials, "Forward samples to draw");

  ReduceOptions reduce;
  auto* red = app.add_subcommand("reduce", "Apply a reduction");
  red->add_option("--or-compose", reduce.or_compose, "Formula files to disjoin")->expected(1, -1);
  red->add_option("--formula-to-bn", reduce.formula_to_bn, "Formula file to encode as a network");
  red->add_option("--gadgetize", reduce.gadgetize, "Instance file to turn into a conditional query");
  red->add_option("--k", reduce.k, "Gap parameter for --formula-to-bn")->check(CLI::PositiveNumber);
  red->add_option("--out", reduce.out, "Output file")->required();
  red->add_option("--network-out", reduce.network_out, "Network file (default: <out>.network.json)");

  DecideOptions decide;
  auto* dec = app.add_subcommand("decide", "Run a randomized decider");
  dec->add_option("--instance", decide.instance, "Instance JSON file");
  dec->add_option("--method", decide.method, "forward, rejection or ptm");
  dec->add_option("--seed", decide.seed, "Seed");
  dec->add_option("--trials", decide.trials, "Trials (odd for majority votes)");
  dec->add_flag("--check-promise", decide.check_promise, "Check the promise exactly and warn on violation");
  dec->add_option("--failure", decide.failure, "Failure budget for the rejection sampler");
  dec->add_option("--pe-lower", decide.pe_lower, "Lower bound on Pr(e) for the rejection budget");
  dec->add_option("--machine", decide.machine, "Machine JSON file (ptm method)");
  dec->add_option("--input", decide.input, "Input word (ptm method)");
  dec->add_option("--steps", decide.steps, "Transitions (ptm method)");
  dec->add_option("--advantage", decide.advantage, "Claimed per-trial advantage (ptm method)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_compile(compile, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (val->parsed()) return cmd_validate(validate_file, out);
    if (inf->parsed()) return cmd_infer(infer, out);
    if (red->parsed()) return cmd_reduce(reduce, out);
    if (dec->parsed()) return cmd_decide(decide, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const EnumerationTooLarge& e) {
    err << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const TooManyVariables& e) {
    err << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const ZeroEvidence& e) {
    err << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}

}  // namespace pppt::cli
