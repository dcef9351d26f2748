#include "pirc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "pirc/bounds.hpp"
#include "pirc/constructions.hpp"
#include "pirc/designs.hpp"
#include "pirc/error.hpp"
#include "pirc/hamming.hpp"
#include "pirc/report.hpp"
#include "pirc/searchlab.hpp"

namespace pirc::cli {

namespace {

using report::Json;

constexpr const char* kFooter =
    "Exit codes: 0 verdict produced (positive or negative), 1 internal error,\n"
    "2 usage error, 3 malformed input file, 4 budget exhausted or checkpoint error.\n"
    "PIRC_THREADS sets the default worker count; --threads overrides it.";

struct Common {
  std::string format = "json";
  int threads = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
};

// Thrown to report an incomplete result after its report has been printed.
struct Incomplete {};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void emit(const Json& j) {
    if (common_.format == "text") {
      report::write_text(out_, j);
    } else {
      out_ << j.dump(2) << "\n";
    }
  }
  void progress(const std::string& msg) { err_ << "pirc: " << msg << std::endl; }
  Parallelism par() const { return Parallelism{common_.threads}; }

  Encoder load_encoder() {
    if (encoder_path_.empty() == generator_path_.empty()) {
      throw UsageError("give exactly one of --encoder and --generator");
    }
    if (!encoder_path_.empty()) {
      auto in = open_input(encoder_path_);
      return read_encoder(in);
    }
    auto in = open_input(generator_path_);
    auto g = read_matrix(in);
    if (g.rank() != g.rows()) throw InputError("generator matrix does not have full row rank");
    return Encoder::linear(std::move(g));
  }

  ConstructedCode build_base();

  void cmd_construct(bool packing);
  void cmd_extend();
  void cmd_verify(bool batch);
  void cmd_mindist();
  void cmd_packing_find();
  void cmd_packing_number();
  void cmd_hamming_check();
  void cmd_hamming_claims();
  void cmd_maxsize();
  void cmd_optimal_table();
  void cmd_search_codes();
  void cmd_search_encoder();
  void cmd_search_open();

  std::ostream& out_;
  std::ostream& err_;
  Common common_;
  std::function<void()> action_;

  // Flags shared by several subcommands.
  std::size_t k_ = 0;
  std::size_t t_ = 3;
  std::size_t r_ = 0;
  std::string design_path_;
  std::string from_ = "pir3";
  std::string encoder_path_;
  std::string generator_path_;
  std::string code_path_;
  std::optional<std::size_t> width_;
  std::size_t mu_ = 1;
  int v_ = 0;
  int blocksize_ = 4;
  int target_ = 0;
  std::size_t n_ = 0;
  std::size_t d_ = 3;
  bool compute_ = false;
  std::size_t kmax_ = 6;
  bool verify_uniqueness_ = false;
  std::size_t size_ = 0;
  std::string mode_ = "exhaustive";
  std::uint64_t attempts_ = 32;
  std::string checkpoint_;
  std::uint64_t triple_budget_ = 50'000;
};

ConstructedCode Runner::build_base() {
  if (from_ == "pir3") return build_pir3(k_);
  if (from_ != "packing-pir") throw UsageError("--from must be pir3 or packing-pir");
  if (t_ < 3) throw UsageError("packing construction needs t >= 3");
  const int bs = static_cast<int>(t_) - 1;
  PackingDesign d;
  if (!design_path_.empty()) {
    auto in = open_input(design_path_);
    d = read_packing(in);
  } else {
    if (r_ == 0) throw UsageError("give --r or --design");
    d = greedy_packing(static_cast<int>(r_), bs);
    if (d.blocks.size() < k_) {
      progress("greedy packing has " + std::to_string(d.blocks.size()) + " blocks; searching for " +
               std::to_string(k_));
      auto s = exact_packing(static_cast<int>(r_), bs, static_cast<int>(k_), common_.budget, par());
      if (s.status == PackingStatus::ProvenImpossible) {
        throw UsageError("no 2-(" + std::to_string(r_) + "," + std::to_string(bs) + ",1) packing has " +
                         std::to_string(k_) + " blocks");
      }
      if (s.status == PackingStatus::Unknown) {
        emit(report::packing_search(s, static_cast<int>(r_), bs, static_cast<int>(k_)));
        throw Incomplete{};
      }
      d = *s.design;
    }
  }
  return build_packing_pir(k_, t_, d);
}

void Runner::cmd_construct(bool packing) {
  from_ = packing ? "packing-pir" : "pir3";
  if (!packing) t_ = 3;
  auto c = build_base();
  VerifyOptions vo;
  vo.witnesses = c.witnesses;
  vo.par = par();
  vo.budget = common_.budget;
  emit(report::constructed(c, verify_pir(c.encoder, c.t, vo)));
}

void Runner::cmd_extend() {
  if (from_ == "pir3") t_ = 3;
  auto c = extend_for_even_t(build_base());
  VerifyOptions vo;
  vo.witnesses = c.witnesses;
  vo.par = par();
  vo.budget = common_.budget;
  emit(report::constructed(c, verify_pir(c.encoder, c.t, vo)));
}

void Runner::cmd_verify(bool batch) {
  auto e = load_encoder();
  VerifyOptions vo;
  vo.width = width_;
  vo.multiplicity = mu_;
  vo.budget = common_.budget;
  vo.par = par();
  progress(std::string("verifying ") + (batch ? "batch" : "pir") + " t=" + std::to_string(t_));
  auto r = batch ? verify_batch(e, t_, vo) : verify_pir(e, t_, vo);
  emit(report::verification(r));
  if (r.verdict == Verdict::Unknown) throw Incomplete{};
}

void Runner::cmd_mindist() {
  auto e = load_encoder();
  VerifyOptions vo;
  vo.width = width_;
  vo.budget = common_.budget;
  vo.par = par();
  auto m = check_mindist_bound(e, t_, mu_, vo);
  emit(report::mindist(m, t_, mu_));
  if (m.pir == Verdict::Unknown) throw Incomplete{};
}

void Runner::cmd_packing_find() {
  progress("searching for " + std::to_string(target_) + " blocks");
  auto s = exact_packing(v_, blocksize_, target_, common_.budget, par());
  emit(report::packing_search(s, v_, blocksize_, target_));
  if (s.status == PackingStatus::Unknown) throw Incomplete{};
}

void Runner::cmd_packing_number() {
  const auto r = static_cast<std::int64_t>(r_);
  emit(Json{{"r", r},
            {"blocksize", 4},
            {"packing_number", packing_number_formula(r)},
            {"bound_u", packing_bound_u(r)},
            {"bound_j", packing_bound_j(r)}});
}

void Runner::cmd_hamming_check() {
  progress("checking all disjoint triples of the order-" + std::to_string(r_) + " Hamming code");
  emit(report::hamming_verdict(check_no_3pir_any_encoder(static_cast<int>(r_), par())));
}

void Runner::cmd_hamming_claims() {
  const int r = static_cast<int>(r_);
  std::vector<std::pair<std::array<PositionSet, 3>, ClaimReport>> checked;
  for (const auto& t : coset_triples(r)) checked.emplace_back(t, check_theorem6_claims(r, t));
  emit(report::claims(r, checked));
}

void Runner::cmd_maxsize() {
  if (n_ >= 9 && d_ == 3 && !compute_) {
    auto e = a2_reference(n_);
    if (!e) throw UsageError("no reference value for n = " + std::to_string(n_));
    emit(report::a2(*e));
    return;
  }
  progress("maximum clique search, n=" + std::to_string(n_) + " d=" + std::to_string(d_));
  auto e = max_code_size(n_, d_, common_.budget, par());
  emit(report::a2(e));
  if (!e.exact && e.source == A2Source::Computed) throw Incomplete{};
}

void Runner::cmd_optimal_table() {
  if (t_ != 3) throw UsageError("only t = 3 is tabulated");
  std::vector<BoundReport> exact;
  OptimalityOptions oo;
  oo.verify_uniqueness = verify_uniqueness_;
  oo.budget = common_.budget;
  oo.par = par();
  for (std::size_t k = 1; k <= std::min<std::size_t>(kmax_, 6); ++k) {
    progress("optimality chain for k=" + std::to_string(k));
    exact.push_back(optimality_report_3pir(k, oo));
  }
  emit(report::optimal_table(t_, exact, linear_length_table(t_, kmax_)));
}

void Runner::cmd_search_codes() {
  CodeSearchOptions o;
  o.n = n_;
  o.size = size_;
  o.dmin = d_;
  if (mode_ == "exhaustive") {
    o.mode = SearchMode::Exhaustive;
  } else if (mode_ == "heuristic") {
    o.mode = SearchMode::Heuristic;
  } else {
    throw UsageError("--mode must be exhaustive or heuristic");
  }
  o.budget = common_.budget;
  o.seed = common_.seed;
  o.attempts = attempts_;
  o.checkpoint = checkpoint_;
  o.par = par();
  progress("searching " + to_string(o.mode) + " (n=" + std::to_string(n_) + ", size=" + std::to_string(size_) + ")");
  auto r = search_codes(o);
  auto j = report::code_search(o, r);
  // Timing is left out so fixed-seed output is byte-identical.
  emit(j);
  progress("done in " + std::to_string(r.elapsed_ms) + " ms");
  if (o.mode == SearchMode::Exhaustive && !r.complete) throw Incomplete{};
}

void Runner::cmd_search_encoder() {
  auto in = open_input(code_path_);
  auto code = read_code(in);
  EncoderSearchOptions eo;
  eo.triple_budget = common_.budget;
  eo.node_budget = common_.budget;
  eo.par = par();
  auto s = encoder_exists_3pir(code, eo);
  emit(report::encoder_search(s));
  if (s.status == Existence::Unknown) throw Incomplete{};
}

void Runner::cmd_search_open() {
  HuntOptions h;
  if (n_ != 0) h.n = n_;
  if (size_ != 0) h.size = size_;
  h.budget = common_.budget == kDefaultBudget ? 4 : common_.budget;
  h.seed = common_.seed;
  h.triple_budget = triple_budget_;
  h.checkpoint = checkpoint_;
  h.par = par();
  progress("examining " + std::to_string(h.budget) + " heuristic codes");
  emit(report::hunt(open11_hunt(h)));
}

int Runner::run(const std::vector<std::string>& args) {
  if (const char* env = std::getenv("PIRC_THREADS"); env != nullptr && *env != '\0') {
    try {
      common_.threads = std::stoi(env);
    } catch (const std::exception&) {
      err_ << "pirc: PIRC_THREADS must be an integer\n";
      return kUsage;
    }
  }

  CLI::App app{"Construct, verify and search binary PIR and batch codes.", "pirc"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.add_option("--format", common_.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", common_.threads, "Worker threads (0: default)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", common_.budget, "Search budget (nodes, attempts or codes)");
  app.add_option("--seed", common_.seed, "Random seed");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, void (Runner::*fn)()) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([this, fn] { action_ = [this, fn] { (this->*fn)(); }; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->require_subcommand(1);
    return sub;
  };
  auto encoder_flags = [&](CLI::App* sub) {
    sub->add_option("--encoder", encoder_path_, "Explicit encoder file (\"data codeword\" lines)");
    sub->add_option("--generator", generator_path_, "Generator matrix file");
  };

  // construct
  auto* construct = group("construct", "Build a PIR code with its recovery sets");
  auto* c_pir3 = leaf(construct, "pir3", "Systematic 3-PIR code from weight-2 columns", nullptr);
  c_pir3->callback([this] { action_ = [this] { cmd_construct(false); }; });
  c_pir3->add_option("--k", k_, "Data bits")->required()->check(CLI::PositiveNumber);
  auto* c_pack = leaf(construct, "packing-pir", "Systematic t-PIR code from a pair packing", nullptr);
  c_pack->callback([this] { action_ = [this] { cmd_construct(true); }; });
  c_pack->add_option("--k", k_, "Data bits")->required()->check(CLI::PositiveNumber);
  c_pack->add_option("--t", t_, "Recovery sets per bit (block size t-1)")->required();
  c_pack->add_option("--r", r_, "Points of the packing (redundancy)");
  c_pack->add_option("--design", design_path_, "Packing design file");

  auto* extend = leaf(&app, "extend", "Append a parity position: t-PIR to (t+1)-PIR", &Runner::cmd_extend);
  extend->add_option("--from", from_, "Base construction")->check(CLI::IsMember({"pir3", "packing-pir"}));
  extend->add_option("--k", k_, "Data bits")->required()->check(CLI::PositiveNumber);
  extend->add_option("--t", t_, "Base t for packing-pir");
  extend->add_option("--r", r_, "Points of the packing");
  extend->add_option("--design", design_path_, "Packing design file");

  // verify
  auto* verify = group("verify", "Exact PIR or batch verification");
  for (bool batch : {false, true}) {
    auto* v = leaf(verify, batch ? "batch" : "pir", batch ? "t-batch property" : "t-PIR property", nullptr);
    v->callback([this, batch] { action_ = [this, batch] { cmd_verify(batch); }; });
    v->add_option("--t", t_, "Number of requests")->required()->check(CLI::PositiveNumber);
    v->add_option("--width", width_, "Maximum recovery set size");
    v->add_option("--mu", mu_, "Maximum sets sharing a position")->check(CLI::PositiveNumber);
    encoder_flags(v);
  }

  auto* mind = leaf(&app, "mindist", "Check min distance >= ceil(t/mu) for a PIR encoder", &Runner::cmd_mindist);
  mind->add_option("--t", t_, "Number of requests")->required()->check(CLI::PositiveNumber);
  mind->add_option("--mu", mu_, "Multiplicity")->check(CLI::PositiveNumber);
  mind->add_option("--width", width_, "Maximum recovery set size");
  encoder_flags(mind);

  // packing
  auto* packing = group("packing", "Pair packings with blocks of size 4");
  auto* p_find = leaf(packing, "find", "Exact search for a packing with a target block count", &Runner::cmd_packing_find);
  p_find->add_option("--v", v_, "Points")->required()->check(CLI::PositiveNumber);
  p_find->add_option("--blocksize", blocksize_, "Block size")->check(CLI::PositiveNumber);
  p_find->add_option("--target", target_, "Number of blocks")->required()->check(CLI::NonNegativeNumber);
  auto* p_num = leaf(packing, "number", "Packing number D(r,4,2) from the closed formula", &Runner::cmd_packing_number);
  p_num->add_option("--r", r_, "Points")->required();

  // hamming
  auto* hamming = group("hamming", "Hamming-code 3-PIR obstruction");
  leaf(hamming, "check", "Exhaustive no-encoder check", &Runner::cmd_hamming_check)
      ->add_option("--r", r_, "Order (2 or 3)")
      ->required();
  leaf(hamming, "claims", "Structure of disjoint recovery triples", &Runner::cmd_hamming_claims)
      ->add_option("--r", r_, "Order (2..5)")
      ->required();

  auto* maxsize = leaf(&app, "maxsize", "Largest binary code with given length and distance", &Runner::cmd_maxsize);
  maxsize->add_option("--n", n_, "Length")->required()->check(CLI::PositiveNumber);
  maxsize->add_option("--d", d_, "Minimum distance")->check(CLI::PositiveNumber);
  maxsize->add_flag("--compute", compute_, "Search even where reference data exists (n >= 9)");

  auto* table = leaf(&app, "optimal-table", "Shortest 3-PIR lengths per k", &Runner::cmd_optimal_table);
  table->add_option("--t", t_, "Requests (only 3)");
  table->add_option("--kmax", kmax_, "Largest k")->check(CLI::PositiveNumber);
  table->add_flag("--verify-uniqueness", verify_uniqueness_, "Recompute the uniqueness of the (7,16,3) code");

  // search
  auto* search = group("search", "Code searches");
  auto* s_codes = leaf(search, "codes", "Inequivalent codes with given size and distance", &Runner::cmd_search_codes);
  s_codes->add_option("--n", n_, "Length")->required()->check(CLI::PositiveNumber);
  s_codes->add_option("--size", size_, "Number of codewords")->required()->check(CLI::PositiveNumber);
  s_codes->add_option("--dmin", d_, "Minimum distance")->check(CLI::PositiveNumber);
  s_codes->add_option("--mode", mode_, "exhaustive or heuristic");
  s_codes->add_option("--attempts", attempts_, "Heuristic attempts in total");
  s_codes->add_option("--checkpoint", checkpoint_, "Checkpoint file (created or resumed)");
  auto* s_enc = leaf(search, "encoder", "Look for a 3-PIR encoder of a given code", &Runner::cmd_search_encoder);
  s_enc->add_option("--code", code_path_, "Code file")->required();
  auto* s_open = leaf(search, "open11", "Budgeted evidence gathering for length-11 codes", &Runner::cmd_search_open);
  s_open->add_option("--checkpoint", checkpoint_, "Checkpoint file (created or resumed)");
  s_open->add_option("--n", n_, "Length");
  s_open->add_option("--size", size_, "Number of codewords");
  s_open->add_option("--triple-budget", triple_budget_, "Triples examined per code");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out_, err_);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out_, err_);
    return kUsage;
  }
  if (!action_) {
    err_ << app.help();
    return kUsage;
  }
  try {
    action_();
    return kOk;
  } catch (const Incomplete&) {
    progress("budget exhausted; result incomplete");
    return kIncomplete;
  } catch (const UsageError& e) {
    err_ << "pirc: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err_ << "pirc: " << e.what() << "\n";
    return kBadInput;
  } catch (const CheckpointError& e) {
    err_ << "pirc: " << e.what() << "\n";
    return kIncomplete;
  } catch (const std::exception& e) {
    err_ << "pirc: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace pirc::cli
