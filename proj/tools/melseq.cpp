// melseq: batch CLI for corpus ingestion, maximum-entropy training, MCMC
// generation, Markov baselines, compression-based evaluation, and figure
// data export. Every command writes a manifest.json sufficient to re-run
// it bit-identically (see the replay subcommand).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "melseq/analysis.hpp"
#include "melseq/corpus.hpp"
#include "melseq/errors.hpp"
#include "melseq/io.hpp"
#include "melseq/markov.hpp"
#include "melseq/potts.hpp"
#include "melseq/sampling.hpp"
#include "melseq/training.hpp"
#include "melseq/zipeval.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

fs::path default_out(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("MELSEQ_OUT_DIR")) return env;
  return ".";
}

void write_manifest(const fs::path& out, const std::string& command,
                    const json& args, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  json doc;
  doc["tool_version"] = kVersion;
  doc["command"] = command;
  doc["args"] = args;
  json in = json::object();
  for (const auto& p : inputs) in[p] = melseq::file_hash(p);
  doc["inputs"] = in;
  json outj = json::object();
  for (const auto& name : outputs) outj[name] = melseq::file_hash(out / name);
  doc["outputs"] = outj;
  melseq::write_text_file(out / "manifest.json", doc.dump(2) + "\n");
}

int run_command(const std::string& command, const json& args);

// ---------------------------------------------------------------- ingest

int run_ingest(const json& args) {
  const fs::path input = args.at("input").get<std::string>();
  const std::string format = args.at("format").get<std::string>();
  const bool intervals = args.at("intervals").get<bool>();
  const fs::path out = args.at("out").get<std::string>();

  std::istringstream in(melseq::read_text_file(input));
  melseq::PitchSequence seq = melseq::load_corpus(
      in, format == "notes" ? melseq::CorpusFormat::NoteNames
                            : melseq::CorpusFormat::PlainIntegers);
  if (intervals) seq = melseq::to_intervals(seq);

  melseq::write_sequence_artifact(out, seq);
  json info;
  info["q"] = seq.alphabet.size();
  info["N"] = seq.size();
  info["encoding"] = intervals ? "intervals" : "pitch";
  melseq::write_text_file(out / "info.json", info.dump(2) + "\n");
  write_manifest(out, "ingest", args, {input.string()},
                 {"sequence.txt", "alphabet.json", "info.json"});
  std::cout << "ingested N=" << seq.size() << " q=" << seq.alphabet.size() << "\n";
  return 0;
}

// ----------------------------------------------------------------- train

int run_train(const json& args) {
  const fs::path corpus_dir = args.at("corpus").get<std::string>();
  const fs::path out = args.at("out").get<std::string>();
  melseq::TrainConfig cfg;
  cfg.k_max = args.at("kmax").get<int>();
  cfg.lambda = args.at("lambda").get<double>();
  cfg.tol = args.at("tol").get<double>();
  cfg.max_iters = args.at("max_iters").get<int>();
  const bool trace = args.at("trace").get<bool>();

  melseq::PitchSequence corpus = melseq::read_sequence_artifact(corpus_dir);
  auto samples = melseq::windows(corpus, cfg.k_max);
  auto [model, report] = melseq::train(samples, corpus.alphabet.size(), cfg);

  fs::create_directories(out);
  melseq::write_text_file(out / "model.json", model.to_json());
  melseq::write_text_file(out / "alphabet.json",
                          melseq::alphabet_to_json(corpus.alphabet));
  melseq::write_text_file(out / "report.json", report.to_json());
  std::vector<std::string> outputs = {"model.json", "alphabet.json", "report.json"};
  if (trace) {
    std::string csv = "iter,objective,zero_fraction\n";
    for (size_t i = 0; i < report.objective_trace.size(); ++i) {
      csv += std::to_string(i) + "," + fmt17(report.objective_trace[i]) + "," +
             fmt17(i < report.zero_fraction_trace.size() ? report.zero_fraction_trace[i] : 0.0) +
             "\n";
    }
    melseq::write_text_file(out / "trace.csv", csv);
    outputs.push_back("trace.csv");
  }
  write_manifest(out, "train", args,
                 {(corpus_dir / "sequence.txt").string(),
                  (corpus_dir / "alphabet.json").string()},
                 outputs);
  std::cout << "trained: objective=" << report.final_objective
            << " iters=" << report.iterations
            << " zero_frac=" << report.zero_coupling_fraction
            << (report.converged ? " (converged)" : " (max iters)") << "\n";
  return 0;
}

// -------------------------------------------------------------- generate

int run_generate(const json& args) {
  const std::string mode = args.at("mode").get<std::string>();
  const fs::path out = args.at("out").get<std::string>();
  const int n = args.at("n").get<int>();
  const uint64_t seed = args.at("seed").get<uint64_t>();

  melseq::PitchSequence seq;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs = {"sequence.txt", "alphabet.json", "info.json"};
  json info;
  info["seed"] = seed;
  info["N"] = n;

  if (mode == "model") {
    const fs::path model_dir = args.at("model").get<std::string>();
    melseq::ModelParams model =
        melseq::ModelParams::from_json(melseq::read_text_file(model_dir / "model.json"));
    melseq::Alphabet alphabet =
        melseq::alphabet_from_json(melseq::read_text_file(model_dir / "alphabet.json"));
    melseq::SamplerConfig cfg;
    cfg.n = n;
    cfg.seed = seed;
    cfg.sweeps_factor = args.at("sweeps_factor").get<int>();
    seq = melseq::generate(model, alphabet, cfg);
    inputs = {(model_dir / "model.json").string(), (model_dir / "alphabet.json").string()};
    info["model"] = "maxent";
    info["K_max"] = model.k_max;
    info["sweeps_factor"] = cfg.sweeps_factor;
  } else if (mode == "fo") {
    const fs::path corpus_dir = args.at("corpus").get<std::string>();
    melseq::PitchSequence corpus = melseq::read_sequence_artifact(corpus_dir);
    const int order = args.at("order").get<int>();
    melseq::FixedOrderModel model = melseq::fit_fo(corpus, order);
    seq = melseq::generate_fo(model, n, seed);
    inputs = {(corpus_dir / "sequence.txt").string(), (corpus_dir / "alphabet.json").string()};
    info["model"] = "fo";
    info["K_max"] = order;
  } else if (mode == "vo") {
    const fs::path corpus_dir = args.at("corpus").get<std::string>();
    melseq::PitchSequence corpus = melseq::read_sequence_artifact(corpus_dir);
    const int vo_kmax = args.at("vo_kmax").get<int>();
    const int min_cont = args.at("min_continuations").get<int>();
    melseq::VariableOrderModel model = melseq::fit_vo(corpus, vo_kmax, min_cont);
    std::vector<int> orders;
    seq = melseq::generate_vo(model, n, seed, &orders);
    fs::create_directories(out);
    std::string csv = "step,order\n";
    for (size_t i = 0; i < orders.size(); ++i)
      csv += std::to_string(i) + "," + std::to_string(orders[i]) + "\n";
    melseq::write_text_file(out / "orders.csv", csv);
    outputs.push_back("orders.csv");
    inputs = {(corpus_dir / "sequence.txt").string(), (corpus_dir / "alphabet.json").string()};
    info["model"] = "vo";
    info["K_max"] = vo_kmax;
    info["min_continuations"] = min_cont;
  } else {
    throw melseq::data_error("unknown generate mode: " + mode);
  }

  melseq::write_sequence_artifact(out, seq);
  melseq::write_text_file(out / "info.json", info.dump(2) + "\n");
  write_manifest(out, "generate", args, inputs, outputs);
  std::cout << "generated N=" << seq.size() << " (" << info["model"] << ")\n";
  return 0;
}

// -------------------------------------------------------------- evaluate

struct EvalRow {
  std::string a_id, b_id, model;
  int k_max = 0;
  uint64_t seed = 0;
  melseq::SimilarityReport rep;
};

EvalRow evaluate_one(const fs::path& ref_dir, const fs::path& gen_dir, bool intervals) {
  melseq::PitchSequence a = melseq::read_sequence_artifact(ref_dir);
  melseq::PitchSequence b = melseq::read_sequence_artifact(gen_dir);
  if (intervals) {
    a = melseq::to_intervals(a);
    b = melseq::to_intervals(b);
  }
  EvalRow row;
  row.a_id = ref_dir.filename().string();
  row.b_id = gen_dir.filename().string();
  row.rep = melseq::evaluate_similarity(a.raw_labels(), b.raw_labels());
  if (fs::exists(gen_dir / "info.json")) {
    json info = json::parse(melseq::read_text_file(gen_dir / "info.json"));
    row.model = info.value("model", "");
    row.k_max = info.value("K_max", 0);
    row.seed = info.value("seed", 0ULL);
  }
  return row;
}

int run_evaluate(const json& args) {
  const fs::path ref = args.at("ref").get<std::string>();
  const bool intervals = args.at("intervals").get<bool>();
  const fs::path out = args.at("out").get<std::string>();

  std::vector<fs::path> gen_dirs;
  if (args.contains("batch") && !args.at("batch").get<std::string>().empty()) {
    fs::path batch = args.at("batch").get<std::string>();
    for (const auto& e : fs::directory_iterator(batch))
      if (e.is_directory() && fs::exists(e.path() / "sequence.txt"))
        gen_dirs.push_back(e.path());
    std::sort(gen_dirs.begin(), gen_dirs.end());
    if (gen_dirs.empty()) throw melseq::data_error("no sequence artifacts in " + batch.string());
  } else {
    gen_dirs.push_back(args.at("gen").get<std::string>());
  }

  std::vector<EvalRow> rows;
  for (const auto& dir : gen_dirs) rows.push_back(evaluate_one(ref, dir, intervals));
  // deterministic output ordering for batch runs
  std::sort(rows.begin(), rows.end(), [](const EvalRow& x, const EvalRow& y) {
    return std::tie(x.model, x.k_max, x.seed, x.b_id) <
           std::tie(y.model, y.k_max, y.seed, y.b_id);
  });

  fs::create_directories(out);
  std::string csv = "A_id,B_id,model,K_max,seed,cross_entropy,acs,lcs\n";
  for (const EvalRow& r : rows) {
    csv += r.a_id + "," + r.b_id + "," + r.model + "," + std::to_string(r.k_max) +
           "," + std::to_string(r.seed) + "," +
           fmt17(r.rep.cross_entropy_bits_per_symbol) + "," + fmt17(r.rep.acs) +
           "," + std::to_string(r.rep.lcs) + "\n";
  }
  melseq::write_text_file(out / "rows.csv", csv);
  std::vector<std::string> outputs = {"rows.csv"};
  if (rows.size() == 1) {
    melseq::write_text_file(out / "report.json", rows.front().rep.to_json());
    outputs.push_back("report.json");
  }
  std::vector<std::string> inputs = {(ref / "sequence.txt").string()};
  for (const auto& dir : gen_dirs) inputs.push_back((dir / "sequence.txt").string());
  write_manifest(out, "evaluate", args, inputs, outputs);
  std::cout << "evaluated " << rows.size() << " sequence(s)\n";
  return 0;
}

// --------------------------------------------------------------- analyze

int run_analyze(const json& args) {
  const fs::path corpus_dir = args.at("corpus").get<std::string>();
  const fs::path gen_dir = args.at("generated").get<std::string>();
  const std::string figure = args.at("figure").get<std::string>();
  const fs::path out = args.at("out").get<std::string>();

  melseq::PitchSequence corpus = melseq::read_sequence_artifact(corpus_dir);
  melseq::PitchSequence generated = melseq::read_sequence_artifact(gen_dir);
  fs::create_directories(out);
  std::vector<std::string> outputs;

  if (figure == "rankfreq") {
    auto rows = melseq::pattern_freq_rank(corpus.raw_labels(), generated.raw_labels(),
                                          args.at("max_len").get<int>());
    std::string csv = "l,rank,corpus_freq,generated_freq\n";
    for (const auto& r : rows)
      csv += std::to_string(r.len) + "," + std::to_string(r.rank) + "," +
             fmt17(r.corpus_freq) + "," + fmt17(r.generated_freq) + "\n";
    melseq::write_text_file(out / "rankfreq.csv", csv);
    outputs.push_back("rankfreq.csv");
  } else if (figure == "innovation") {
    auto curve = melseq::hamming_counts(corpus.raw_labels(), generated.raw_labels(),
                                        args.at("min_len").get<int>(),
                                        args.at("max_len").get<int>());
    if (curve.truncated)
      std::cerr << "warning: length range truncated to sequence length\n";
    std::string csv = "l,n_corpus,n_d0,n_d1,n_enum_d1\n";
    for (size_t i = 0; i < curve.lengths.size(); ++i)
      csv += std::to_string(curve.lengths[i]) + "," + std::to_string(curve.n_corpus[i]) +
             "," + std::to_string(curve.n_d0[i]) + "," + std::to_string(curve.n_d1[i]) +
             "," + std::to_string(curve.n_enum_d1[i]) + "\n";
    melseq::write_text_file(out / "innovation.csv", csv);
    outputs.push_back("innovation.csv");
  } else if (figure == "matrices") {
    std::vector<int> ks = args.at("ks").get<std::vector<int>>();
    std::string csv = "source,k,row,col,value\n";
    for (int k : ks) {
      for (const auto& [name, seq] :
           {std::pair<std::string, const melseq::PitchSequence*>{"corpus", &corpus},
            {"generated", &generated}}) {
        std::vector<double> m = melseq::pair_freq(*seq, k);
        const int q = seq->alphabet.size();
        for (int r = 0; r < q; ++r)
          for (int c = 0; c < q; ++c)
            csv += name + "," + std::to_string(k) + "," +
                   std::to_string(seq->alphabet.label(r)) + "," +
                   std::to_string(seq->alphabet.label(c)) + "," +
                   fmt17(m[static_cast<size_t>(r) * q + c]) + "\n";
      }
    }
    melseq::write_text_file(out / "matrices.csv", csv);
    outputs.push_back("matrices.csv");
  } else if (figure == "scatter") {
    auto points = melseq::scatter_data(corpus, generated, args.at("kmax").get<int>());
    std::string csv = "k,sigma,sigma_prime,corpus_freq,model_freq\n";
    for (const auto& p : points)
      csv += std::to_string(p.k) + "," + std::to_string(p.sigma) + "," +
             std::to_string(p.sigma_prime) + "," + fmt17(p.corpus_freq) + "," +
             fmt17(p.model_freq) + "\n";
    melseq::write_text_file(out / "scatter.csv", csv);
    outputs.push_back("scatter.csv");
  } else {
    throw melseq::data_error("unknown figure: " + figure);
  }

  write_manifest(out, "analyze", args,
                 {(corpus_dir / "sequence.txt").string(), (gen_dir / "sequence.txt").string()},
                 outputs);
  std::cout << "wrote " << outputs.front() << "\n";
  return 0;
}

// ---------------------------------------------------------------- replay

int run_replay(const fs::path& manifest_path) {
  json manifest = json::parse(melseq::read_text_file(manifest_path));
  for (auto& [path, hash] : manifest.at("inputs").items()) {
    if (melseq::file_hash(path) != hash.get<std::string>())
      throw melseq::data_error("input changed since original run: " + path);
  }
  fs::path tmp = fs::temp_directory_path() /
                 ("melseq-replay-" + melseq::hash_hex(manifest_path.string() +
                                                      manifest.dump()));
  fs::remove_all(tmp);
  json args = manifest.at("args");
  args["out"] = tmp.string();
  run_command(manifest.at("command").get<std::string>(), args);
  bool ok = true;
  for (auto& [name, hash] : manifest.at("outputs").items()) {
    std::string got = melseq::file_hash(tmp / name);
    if (got != hash.get<std::string>()) {
      std::cerr << "MISMATCH " << name << ": expected " << hash << ", got " << got << "\n";
      ok = false;
    } else {
      std::cout << "ok " << name << "\n";
    }
  }
  fs::remove_all(tmp);
  if (!ok) throw melseq::data_error("replay produced different artifacts");
  std::cout << "replay verified\n";
  return 0;
}

int run_command(const std::string& command, const json& args) {
  if (command == "ingest") return run_ingest(args);
  if (command == "train") return run_train(args);
  if (command == "generate") return run_generate(args);
  if (command == "evaluate") return run_evaluate(args);
  if (command == "analyze") return run_analyze(args);
  throw melseq::data_error("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-entropy melodic sequence modeling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // ingest
  std::string in_input, in_format = "plain", in_out;
  bool in_intervals = false;
  auto* ingest = app.add_subcommand("ingest", "load a corpus into an artifact directory");
  ingest->add_option("--input", in_input, "corpus text file")->required();
  ingest->add_option("--format", in_format, "plain | notes")
      ->check(CLI::IsMember({"plain", "notes"}));
  ingest->add_flag("--intervals", in_intervals, "store successive differences");
  ingest->add_option("--out", in_out, "output directory");

  // train
  std::string tr_corpus, tr_out;
  int tr_kmax = 10, tr_max_iters = 5000;
  double tr_lambda = 2.0, tr_tol = 1e-8;
  bool tr_trace = false;
  auto* train_cmd = app.add_subcommand("train", "fit model parameters to a corpus artifact");
  train_cmd->add_option("--corpus", tr_corpus, "corpus artifact directory")->required();
  train_cmd->add_option("--kmax", tr_kmax, "maximum interaction distance");
  train_cmd->add_option("--lambda", tr_lambda, "L1 strength on couplings");
  train_cmd->add_option("--tol", tr_tol, "relative objective tolerance");
  train_cmd->add_option("--max-iters", tr_max_iters, "iteration cap");
  train_cmd->add_flag("--trace", tr_trace, "write objective trace CSV");
  train_cmd->add_option("--out", tr_out, "output directory");

  // generate
  std::string ge_model, ge_corpus, ge_markov, ge_out;
  int ge_n = 1000, ge_sweeps = 10, ge_order = 1, ge_vo_kmax = 10, ge_min_cont = 3;
  uint64_t ge_seed = 0;
  auto* gen = app.add_subcommand("generate", "sample a new sequence");
  gen->add_option("--model", ge_model, "trained model artifact directory");
  gen->add_option("--markov", ge_markov, "fo | vo baseline instead of a model")
      ->check(CLI::IsMember({"fo", "vo"}));
  gen->add_option("--corpus", ge_corpus, "corpus artifact (required for --markov)");
  gen->add_option("--n", ge_n, "output length");
  gen->add_option("--seed", ge_seed, "RNG seed");
  gen->add_option("--sweeps-factor", ge_sweeps, "MCMC updates per symbol");
  gen->add_option("--order", ge_order, "fixed-order baseline order");
  gen->add_option("--vo-kmax", ge_vo_kmax, "variable-order maximal context + 1");
  gen->add_option("--min-continuations", ge_min_cont, "VO continuation threshold");
  gen->add_option("--out", ge_out, "output directory");

  // evaluate
  std::string ev_ref, ev_gen, ev_batch, ev_out;
  bool ev_raw = false;
  auto* eval = app.add_subcommand("evaluate", "cross-entropy/ACS/LCS against a reference");
  eval->add_option("--ref", ev_ref, "reference corpus artifact")->required();
  eval->add_option("--gen", ev_gen, "generated sequence artifact");
  eval->add_option("--batch", ev_batch, "directory of sequence artifacts");
  eval->add_flag("--raw", ev_raw, "compare pitches directly instead of intervals");
  eval->add_option("--out", ev_out, "output directory");

  // analyze
  std::string an_corpus, an_gen, an_figure, an_out;
  int an_max_len = 6, an_min_len = 1, an_kmax = 10;
  std::vector<int> an_ks;
  auto* analyze = app.add_subcommand("analyze", "emit plot-ready CSV data");
  analyze->add_option("--corpus", an_corpus, "corpus artifact")->required();
  analyze->add_option("--generated", an_gen, "generated sequence artifact")->required();
  analyze->add_option("--figure", an_figure, "scatter | matrices | rankfreq | innovation")
      ->required()
      ->check(CLI::IsMember({"scatter", "matrices", "rankfreq", "innovation"}));
  analyze->add_option("--max-len", an_max_len, "largest pattern length");
  analyze->add_option("--min-len", an_min_len, "smallest pattern length");
  analyze->add_option("--k", an_ks, "pair distance (repeatable, matrices)");
  analyze->add_option("--kmax", an_kmax, "largest pair distance (scatter)");
  analyze->add_option("--out", an_out, "output directory");

  // replay
  std::string rp_manifest;
  auto* replay = app.add_subcommand("replay", "re-run a manifest and verify artifact hashes");
  replay->add_option("--manifest", rp_manifest, "manifest.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*ingest) {
      json args = {{"input", in_input},
                   {"format", in_format},
                   {"intervals", in_intervals},
                   {"out", default_out(in_out).string()}};
      return run_ingest(args);
    }
    if (*train_cmd) {
      json args = {{"corpus", tr_corpus}, {"kmax", tr_kmax},
                   {"lambda", tr_lambda}, {"tol", tr_tol},
                   {"max_iters", tr_max_iters}, {"trace", tr_trace},
                   {"out", default_out(tr_out).string()}};
      return run_train(args);
    }
    if (*gen) {
      json args = {{"n", ge_n}, {"seed", ge_seed}, {"out", default_out(ge_out).string()}};
      if (!ge_markov.empty()) {
        if (ge_corpus.empty())
          throw melseq::data_error("--markov requires --corpus");
        args["mode"] = ge_markov;
        args["corpus"] = ge_corpus;
        args["order"] = ge_order;
        args["vo_kmax"] = ge_vo_kmax;
        args["min_continuations"] = ge_min_cont;
      } else {
        if (ge_model.empty())
          throw melseq::data_error("generate needs --model or --markov");
        args["mode"] = "model";
        args["model"] = ge_model;
        args["sweeps_factor"] = ge_sweeps;
      }
      return run_generate(args);
    }
    if (*eval) {
      if (ev_gen.empty() && ev_batch.empty())
        throw melseq::data_error("evaluate needs --gen or --batch");
      json args = {{"ref", ev_ref},      {"gen", ev_gen},
                   {"batch", ev_batch},  {"intervals", !ev_raw},
                   {"out", default_out(ev_out).string()}};
      return run_evaluate(args);
    }
    if (*analyze) {
      if (an_figure == "matrices" && an_ks.empty()) an_ks = {1, 5};
      json args = {{"corpus", an_corpus}, {"generated", an_gen},
                   {"figure", an_figure}, {"max_len", an_max_len},
                   {"min_len", an_min_len}, {"ks", an_ks},
                   {"kmax", an_kmax}, {"out", default_out(an_out).string()}};
      return run_analyze(args);
    }
    if (*replay) return run_replay(rp_manifest);
  } catch (const melseq::numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const melseq::dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const melseq::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
