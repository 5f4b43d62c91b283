// cbddl: validate, simulate, evaluate, perturb and analyze CBDDL task
// suites. Exit codes: 0 success, 1 input error, 2 internal error.
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbddl/diversity.hpp"
#include "cbddl/lexer.hpp"
#include "cbddl/parser.hpp"
#include "cbddl/perturb.hpp"
#include "cbddl/printer.hpp"
#include "cbddl/rng.hpp"
#include "cbddl/safety.hpp"
#include "cbddl/trajectory.hpp"
#include "cbddl/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cbddl;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

Lexicon resolve_lexicon(const std::string& flag_path) {
  if (!flag_path.empty()) return Lexicon::load_file(flag_path);
  if (const char* env = std::getenv("CBDDL_LEXICON"))
    return Lexicon::load_file(env);
  if (fs::exists("data/lexicon.tsv"))
    return Lexicon::load_file("data/lexicon.tsv");
  return Lexicon::from_tsv(default_lexicon_tsv());
}

struct ManifestEntry {
  fs::path path;
  std::string level;
  int episodes = 10;
  uint64_t seed_base = 0;
};

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  json j = json::parse(slurp(path));
  std::vector<ManifestEntry> out;
  for (const auto& t : j.at("tasks")) {
    ManifestEntry e;
    e.path = path.parent_path() / t.at("path").get<std::string>();
    e.level = t.value("level", "L0");
    e.episodes = t.value("episodes", 10);
    e.seed_base = t.value("seed_base", 0);
    if (!fs::exists(e.path))
      throw std::runtime_error("manifest task does not exist: " +
                               e.path.string());
    out.push_back(std::move(e));
  }
  return out;
}

// Parse + validate; prints diagnostics and returns false on error.
bool load_task(const fs::path& path, TaskSpec& spec) {
  std::string source;
  try {
    source = slurp(path);
  } catch (const std::exception& e) {
    std::cout << path.string() << ":0:0: error: " << e.what() << "\n";
    return false;
  }
  try {
    spec = parse_problem(source);
  } catch (const LexError& e) {
    std::cout << path.string() << ":" << e.pos().line << ":" << e.pos().col
              << ": error: " << e.message() << "\n";
    return false;
  } catch (const ParseError& e) {
    std::cout << path.string() << ":" << e.pos().line << ":" << e.pos().col
              << ": error: " << e.message() << "\n";
    return false;
  }
  auto diags = validate(spec);
  for (const auto& d : diags)
    std::cout << render_diagnostic(d, path.string()) << "\n";
  return !has_errors(diags);
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool ok = true;
  for (const auto& p : paths) {
    TaskSpec spec;
    if (!load_task(p, spec)) ok = false;
  }
  return ok ? 0 : 1;
}

int cmd_replay(const std::string& task, const std::string& actions_path,
               uint64_t seed, int max_steps, const std::string& out_dir) {
  TaskSpec spec;
  if (!load_task(task, spec)) return 1;
  std::vector<Action> actions = read_actions(actions_path);
  RunParams params;
  params.max_steps = max_steps;
  Trajectory traj = replay(spec, actions, seed, params);
  fs::path out = fs::path(out_dir) / (fs::path(task).stem().string() + ".traj.jsonl");
  spit(out, trajectory_to_jsonl(traj));
  std::cout << out.string() << "\n";
  return 0;
}

struct EpisodeResult {
  bool ok = false;
  std::string error;
  EvalReport report;
};

int cmd_evaluate(const std::string& manifest_path,
                 const std::string& actions_dir, const std::string& out_dir,
                 uint64_t seed, int episodes_override, int max_steps,
                 int jobs) {
  auto manifest = load_manifest(manifest_path);
  bool batch_ok = true;

  struct TaskWork {
    ManifestEntry entry;
    TaskSpec spec;
    std::string name;
    std::vector<Action> base_actions;
    std::vector<fs::path> episode_actions;  // optional per-episode files
    int episodes = 0;
    std::string error;
  };
  std::vector<TaskWork> tasks;
  for (const auto& entry : manifest) {
    TaskWork w;
    w.entry = entry;
    w.episodes = episodes_override > 0 ? episodes_override : entry.episodes;
    if (!load_task(entry.path, w.spec)) {
      w.error = "task failed to validate";
      batch_ok = false;
      tasks.push_back(std::move(w));
      continue;
    }
    w.name = w.spec.name;
    std::string stem = entry.path.stem().string();
    fs::path base = fs::path(actions_dir) / (stem + ".actions.jsonl");
    for (int e = 0; e < w.episodes; ++e) {
      fs::path per_ep = fs::path(actions_dir) /
                        (stem + ".ep" + std::to_string(e) + ".actions.jsonl");
      w.episode_actions.push_back(fs::exists(per_ep) ? per_ep : base);
    }
    if (!fs::exists(base) && w.episode_actions.empty()) {
      w.error = "missing action file " + base.string();
      batch_ok = false;
    } else if (!fs::exists(base)) {
      for (const auto& p : w.episode_actions)
        if (!fs::exists(p)) {
          w.error = "missing action file " + p.string();
          batch_ok = false;
        }
    }
    tasks.push_back(std::move(w));
  }

  // Flatten (task, episode) work items; results are stored by index so
  // the worker count cannot reorder anything.
  struct Item {
    size_t task;
    int episode;
  };
  std::vector<Item> items;
  for (size_t t = 0; t < tasks.size(); ++t) {
    if (!tasks[t].error.empty()) continue;
    for (int e = 0; e < tasks[t].episodes; ++e) items.push_back({t, e});
  }
  std::vector<EpisodeResult> results(items.size());

  auto run_item = [&](size_t idx) {
    const Item& item = items[idx];
    TaskWork& w = tasks[item.task];
    EpisodeResult r;
    try {
      std::vector<Action> actions = read_actions(
          w.episode_actions[item.episode].string());
      RunParams params;
      params.max_steps = max_steps;
      uint64_t ep_seed =
          derive_seed(seed ^ w.entry.seed_base, w.name,
                      static_cast<uint64_t>(item.episode));
      Trajectory traj = replay(w.spec, actions, ep_seed, params);
      r.report = evaluate_episode(w.spec, traj, params);
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    results[idx] = std::move(r);
  };

  if (jobs <= 1) {
    for (size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < items.size();
             i = next.fetch_add(1))
          run_item(i);
      });
    for (auto& t : pool) t.join();
  }

  // Serialize outputs in manifest order.
  std::string csv = "task,level,episodes,sr,mean_cc\n";
  size_t cursor = 0;
  for (size_t t = 0; t < tasks.size(); ++t) {
    TaskWork& w = tasks[t];
    std::string stem = w.entry.path.stem().string();
    if (!w.error.empty()) {
      json err{{"task", stem}, {"error", w.error}};
      spit(fs::path(out_dir) / (stem + ".report.json"), err.dump(2) + "\n");
      csv += stem + "," + w.entry.level + ",0,,\n";
      continue;
    }
    json episodes = json::array();
    int successes = 0;
    double cc_sum = 0.0;
    bool task_ok = true;
    for (int e = 0; e < w.episodes; ++e, ++cursor) {
      const EpisodeResult& r = results[cursor];
      if (!r.ok) {
        episodes.push_back(json{{"error", r.error}});
        task_ok = false;
        continue;
      }
      episodes.push_back(json::parse(report_to_json(r.report)));
      successes += r.report.success ? 1 : 0;
      cc_sum += r.report.cc;
    }
    if (!task_ok) batch_ok = false;
    double sr = w.episodes ? static_cast<double>(successes) / w.episodes : 0.0;
    double mean_cc = w.episodes ? cc_sum / w.episodes : 0.0;
    json report{{"task", w.name},
                {"level", w.entry.level},
                {"episodes", std::move(episodes)},
                {"sr", sr},
                {"mean_cc", mean_cc}};
    spit(fs::path(out_dir) / (stem + ".report.json"), report.dump(2) + "\n");
    csv += w.name + "," + w.entry.level + "," + std::to_string(w.episodes) +
           "," + format_number(sr) + "," + format_number(mean_cc) + "\n";
  }
  spit(fs::path(out_dir) / "suite.csv", csv);
  std::cout << (fs::path(out_dir) / "suite.csv").string() << "\n";
  return batch_ok ? 0 : 1;
}

int cmd_report(const std::string& manifest_path, const std::string& reports_dir,
               const std::string& out_file) {
  auto manifest = load_manifest(manifest_path);
  std::string csv = "task,level,episodes,sr,mean_cc\n";
  bool ok = true;
  for (const auto& entry : manifest) {
    std::string stem = entry.path.stem().string();
    fs::path rp = fs::path(reports_dir) / (stem + ".report.json");
    if (!fs::exists(rp)) {
      std::cout << "missing report: " << rp.string() << "\n";
      ok = false;
      continue;
    }
    json j = json::parse(slurp(rp));
    if (j.contains("error")) {
      csv += stem + "," + entry.level + ",0,,\n";
      continue;
    }
    csv += j.at("task").get<std::string>() + "," + entry.level + "," +
           std::to_string(j.at("episodes").size()) + "," +
           format_number(j.at("sr").get<double>()) + "," +
           format_number(j.at("mean_cc").get<double>()) + "\n";
  }
  spit(out_file, csv);
  std::cout << out_file << "\n";
  return ok ? 0 : 1;
}

int cmd_perturb(const std::string& task, int w_level, int v_level,
                uint64_t seed, const std::string& out_dir,
                const std::string& image_path,
                const std::string& template_path,
                const std::string& lexicon_path) {
  TaskSpec spec;
  if (!load_task(task, spec)) return 1;
  fs::create_directories(out_dir);

  if (w_level >= 0) {
    std::string text;
    if (!template_path.empty())
      text = slurp(template_path);
    else if (spec.language)
      text = *spec.language;
    else {
      std::cout << "error: task has no (:language ...) block and no "
                   "--template was given\n";
      return 1;
    }
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
      text.pop_back();
    InstructionTemplate tpl = InstructionTemplate::parse(text);
    Lexicon lex = resolve_lexicon(lexicon_path);
    std::string instruction = substitute(tpl, lex, w_level, seed);
    fs::path out = fs::path(out_dir) /
                   ("instruction_w" + std::to_string(w_level) + ".txt");
    spit(out, instruction + "\n");
    std::cout << instruction << "\n";
  }

  if (v_level >= 0) {
    std::vector<std::string> names;
    for (const auto& o : spec.objects)
      if (!o.is_region()) names.push_back(o.name);
    VisualProfile profile = sample_profile(v_level, seed, names);
    fs::path out =
        fs::path(out_dir) / ("profile_v" + std::to_string(v_level) + ".json");
    spit(out, profile_to_json(profile) + "\n");
    std::cout << out.string() << "\n";
    if (!image_path.empty()) {
      ImageBuffer img = read_ppm(image_path);
      ImageBuffer enhanced = apply_enhancement(img, profile);
      if (profile.noise)
        enhanced = apply_gaussian_noise(enhanced, profile.noise->mean,
                                        profile.noise->var,
                                        derive_seed(seed, "noise"));
      fs::path img_out = fs::path(out_dir) /
                         ("perturbed_v" + std::to_string(v_level) + ".ppm");
      write_ppm(enhanced, img_out.string());
      std::cout << img_out.string() << "\n";
    }
  } else if (!image_path.empty()) {
    // No --v: apply the task's own (:image_settings)/(:noise) blocks.
    ImageBuffer img = read_ppm(image_path);
    VisualProfile profile;
    if (spec.visual.image) {
      profile.brightness = spec.visual.image->brightness;
      profile.contrast = spec.visual.image->contrast;
      profile.saturation = spec.visual.image->saturation;
      profile.temperature = spec.visual.image->temperature;
    }
    ImageBuffer out_img = apply_enhancement(img, profile);
    if (spec.visual.noise) {
      const NoiseSpec& n = *spec.visual.noise;
      if (n.mode == NoiseSpec::Mode::Gaussian)
        out_img = apply_gaussian_noise(out_img, n.mean, n.var,
                                       derive_seed(seed, "noise"));
      else if (n.mode == NoiseSpec::Mode::SaltPepper)
        out_img = apply_salt_pepper(out_img, n.prob, derive_seed(seed, "noise"));
    }
    fs::path img_out = fs::path(out_dir) / "perturbed_task.ppm";
    write_ppm(out_img, img_out.string());
    std::cout << img_out.string() << "\n";
  }
  return 0;
}

int cmd_diversity(const std::vector<std::string>& paths,
                  const std::string& cost_model_path, uint64_t seed,
                  int iterations, int threads, const std::string& out_dir) {
  if (paths.size() < 2) {
    std::cout << "error: diversity needs at least two tasks\n";
    return 1;
  }
  CostModel cm = cost_model_path.empty()
                     ? CostModel::defaults()
                     : CostModel::from_json(slurp(cost_model_path));
  std::vector<SyntaxNode> trees;
  std::vector<std::string> names;
  for (const auto& p : paths) {
    TaskSpec spec;
    if (!load_task(p, spec)) return 1;
    trees.push_back(task_to_tree(spec));
    names.push_back(spec.name);
  }
  DistanceMatrix m = pairwise_matrix(trees, names, cm, threads);
  Layout layout = fr_layout(m, seed, iterations);
  spit(fs::path(out_dir) / "matrix.csv", matrix_to_csv(m));
  spit(fs::path(out_dir) / "layout.csv", layout_to_csv(m, layout));
  std::cout << (fs::path(out_dir) / "matrix.csv").string() << "\n"
            << (fs::path(out_dir) / "layout.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CBDDL task toolkit: validate, replay, evaluate, perturb, "
               "diversity, report"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  int max_steps = 500;
  std::string out_dir = ".";

  auto* validate_cmd = app.add_subcommand("validate", "Parse and check tasks");
  std::vector<std::string> validate_paths;
  validate_cmd->add_option("paths", validate_paths, "CBDDL files")->required();

  auto* replay_cmd =
      app.add_subcommand("replay", "Run recorded actions through the scene");
  std::string replay_task, replay_actions;
  replay_cmd->add_option("--task", replay_task, "task file")->required();
  replay_cmd->add_option("--actions", replay_actions, "actions JSONL")
      ->required();
  replay_cmd->add_option("--seed", seed, "seed");
  replay_cmd->add_option("--max-steps", max_steps, "episode cap");
  replay_cmd->add_option("--out", out_dir, "output directory");

  auto* eval_cmd = app.add_subcommand("evaluate", "Score a task suite");
  std::string manifest_path, actions_dir;
  int episodes_override = 0, jobs = 1;
  eval_cmd->add_option("--manifest", manifest_path, "suite manifest JSON")
      ->required();
  eval_cmd->add_option("--actions-dir", actions_dir, "actions directory")
      ->required();
  eval_cmd->add_option("--out", out_dir, "output directory");
  eval_cmd->add_option("--episodes", episodes_override,
                       "override per-task episode count");
  eval_cmd->add_option("--seed", seed, "seed");
  eval_cmd->add_option("--max-steps", max_steps, "episode cap");
  eval_cmd->add_option("--jobs", jobs, "worker threads");

  auto* report_cmd =
      app.add_subcommand("report", "Aggregate existing report JSONs");
  std::string reports_dir = ".", report_out = "suite.csv";
  report_cmd->add_option("--manifest", manifest_path, "suite manifest JSON")
      ->required();
  report_cmd->add_option("--reports", reports_dir, "directory of report JSONs");
  report_cmd->add_option("--out", report_out, "output CSV path");

  auto* perturb_cmd =
      app.add_subcommand("perturb", "Generate W/V perturbation artifacts");
  std::string perturb_task, image_path, template_path, lexicon_path;
  int w_level = -1, v_level = -1;
  perturb_cmd->add_option("--task", perturb_task, "task file")->required();
  perturb_cmd->add_option("--w", w_level, "language level 0..4");
  perturb_cmd->add_option("--v", v_level, "visual level 0..4");
  perturb_cmd->add_option("--seed", seed, "seed");
  perturb_cmd->add_option("--out", out_dir, "output directory");
  perturb_cmd->add_option("--image", image_path, "input P6 pixmap");
  perturb_cmd->add_option("--template", template_path,
                          "instruction template file");
  perturb_cmd->add_option("--lexicon", lexicon_path, "lexicon TSV");

  auto* diversity_cmd =
      app.add_subcommand("diversity", "Pairwise distances and 2D layout");
  std::vector<std::string> diversity_paths;
  std::string cost_model_path;
  int iterations = 500, threads = 1;
  diversity_cmd->add_option("paths", diversity_paths, "CBDDL files")
      ->required();
  diversity_cmd->add_option("--cost-model", cost_model_path,
                            "cost model JSON");
  diversity_cmd->add_option("--seed", seed, "seed");
  diversity_cmd->add_option("--iterations", iterations, "layout iterations");
  diversity_cmd->add_option("--threads", threads, "distance workers");
  diversity_cmd->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_paths);
    if (replay_cmd->parsed())
      return cmd_replay(replay_task, replay_actions, seed, max_steps, out_dir);
    if (eval_cmd->parsed())
      return cmd_evaluate(manifest_path, actions_dir, out_dir, seed,
                          episodes_override, max_steps, jobs);
    if (report_cmd->parsed())
      return cmd_report(manifest_path, reports_dir, report_out);
    if (perturb_cmd->parsed())
      return cmd_perturb(perturb_task, w_level, v_level, seed, out_dir,
                         image_path, template_path, lexicon_path);
    if (diversity_cmd->parsed())
      return cmd_diversity(diversity_paths, cost_model_path, seed, iterations,
                           threads, out_dir);
  } catch (const json::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    // Bad inputs surface as runtime errors (missing files, malformed
    // manifests, level out of range, ...).
    std::cout << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
