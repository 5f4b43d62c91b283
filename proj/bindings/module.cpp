#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>

#include "cbddl/diversity.hpp"
#include "cbddl/lexer.hpp"
#include "cbddl/parser.hpp"
#include "cbddl/perturb.hpp"
#include "cbddl/printer.hpp"
#include "cbddl/safety.hpp"
#include "cbddl/scene.hpp"
#include "cbddl/trajectory.hpp"
#include "cbddl/validate.hpp"

namespace py = pybind11;
using namespace cbddl;

namespace {

std::vector<Action> actions_from_lists(
    const std::vector<std::vector<double>>& rows) {
  std::vector<Action> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 7)
      throw std::invalid_argument("each action needs 7 numbers");
    std::array<double, 7> a{};
    std::copy(row.begin(), row.end(), a.begin());
    out.push_back(Action::from_array(a));
  }
  return out;
}

py::tuple quat_tuple(const Quat& q) { return py::make_tuple(q.w, q.x, q.y, q.z); }

Quat quat_from(const std::vector<double>& v) {
  if (v.size() != 4) throw std::invalid_argument("quaternion needs (w,x,y,z)");
  return Quat{v[0], v[1], v[2], v[3]}.normalized();
}

py::bytes image_bytes(const ImageBuffer& img) {
  return py::bytes(reinterpret_cast<const char*>(img.pixels.data()),
                   img.pixels.size());
}

ImageBuffer image_from(int width, int height, const py::bytes& data) {
  ImageBuffer img;
  img.width = width;
  img.height = height;
  std::string buf = data;
  if (buf.size() != static_cast<size_t>(width) * height * 3)
    throw std::invalid_argument("pixel buffer must be width*height*3 bytes");
  img.pixels.assign(buf.begin(), buf.end());
  return img;
}

}  // namespace

PYBIND11_MODULE(_cbddl, m) {
  m.doc() = "CBDDL task toolkit: parsing, simulation, safety costs, "
            "perturbation and task-space analysis";

  py::register_exception<LexError>(m, "LexError");
  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<SceneError>(m, "SceneError");
  py::register_exception<EvalError>(m, "EvalError");
  py::register_exception<PerturbError>(m, "PerturbError");

  py::class_<TaskSpec>(m, "TaskSpec")
      .def_property_readonly("name", [](const TaskSpec& s) { return s.name; })
      .def_property_readonly("domain",
                             [](const TaskSpec& s) { return s.domain; })
      .def_property_readonly("language",
                             [](const TaskSpec& s) { return s.language; })
      .def_property_readonly("object_names",
                             [](const TaskSpec& s) {
                               std::vector<std::string> names;
                               for (const auto& o : s.objects)
                                 names.push_back(o.name);
                               return names;
                             })
      .def_property_readonly("mover_names",
                             [](const TaskSpec& s) {
                               std::vector<std::string> names;
                               for (const auto& mv : s.moving_objects)
                                 names.push_back(mv.object);
                               return names;
                             })
      .def("__eq__",
           [](const TaskSpec& a, const TaskSpec& b) {
             return structural_equal(a, b);
           })
      .def("__repr__", [](const TaskSpec& s) {
        return "<TaskSpec '" + s.name + "' (" +
               std::to_string(s.objects.size()) + " objects)>";
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("length",
                             [](const Trajectory& t) { return t.length(); })
      .def("to_jsonl", &trajectory_to_jsonl)
      .def_static("from_jsonl", &trajectory_from_jsonl);

  m.def("parse_problem", &parse_problem, py::arg("source"));
  m.def("pretty_print", &pretty_print, py::arg("spec"));
  m.def(
      "validate",
      [](const TaskSpec& spec) {
        std::vector<py::dict> out;
        for (const auto& d : validate(spec)) {
          py::dict item;
          item["severity"] =
              d.severity == Diagnostic::Severity::Error ? "error" : "warning";
          item["message"] = d.message;
          item["line"] = d.pos.line;
          item["col"] = d.pos.col;
          out.push_back(std::move(item));
        }
        return out;
      },
      py::arg("spec"));

  m.def(
      "slerp",
      [](const std::vector<double>& a, const std::vector<double>& b,
         double t) { return quat_tuple(slerp(quat_from(a), quat_from(b), t)); },
      py::arg("a"), py::arg("b"), py::arg("t"));

  m.def(
      "motion_pose",
      [](const TaskSpec& spec, const std::string& object,
         const std::vector<double>& p0, int step, double dt) {
        const MotionSpec* mv = spec.find_mover(object);
        if (!mv) throw std::invalid_argument("not a moving object: " + object);
        if (p0.size() != 3) throw std::invalid_argument("p0 needs (x,y,z)");
        MotionGenerator gen{*mv, {{p0[0], p0[1], p0[2]}, Quat::identity()}};
        Pose pose = gen.pose_at(step, dt);
        return py::make_tuple(pose.position.x, pose.position.y,
                              pose.position.z);
      },
      py::arg("spec"), py::arg("object"), py::arg("p0"), py::arg("step"),
      py::arg("dt") = kDefaultDt);

  m.def(
      "replay",
      [](const TaskSpec& spec, const std::vector<std::vector<double>>& actions,
         uint64_t seed, int max_steps) {
        RunParams params;
        params.max_steps = max_steps;
        return replay(spec, actions_from_lists(actions), seed, params);
      },
      py::arg("spec"), py::arg("actions"), py::arg("seed") = 0,
      py::arg("max_steps") = 500);

  m.def(
      "evaluate_episode_json",
      [](const TaskSpec& spec, const Trajectory& traj) {
        return report_to_json(evaluate_episode(spec, traj));
      },
      py::arg("spec"), py::arg("trajectory"));

  m.def("default_lexicon_tsv", [] { return default_lexicon_tsv(); });
  m.def(
      "substitute",
      [](const std::string& template_text, const std::string& lexicon_tsv,
         int level, uint64_t seed) {
        return substitute(InstructionTemplate::parse(template_text),
                          Lexicon::from_tsv(lexicon_tsv), level, seed);
      },
      py::arg("template_text"), py::arg("lexicon_tsv"), py::arg("level"),
      py::arg("seed"));
  m.def(
      "enumerate_variants",
      [](const std::string& template_text, const std::string& lexicon_tsv) {
        return enumerate_variants(InstructionTemplate::parse(template_text),
                                  Lexicon::from_tsv(lexicon_tsv));
      },
      py::arg("template_text"), py::arg("lexicon_tsv"));

  m.def(
      "sample_profile_json",
      [](int level, uint64_t seed, const std::vector<std::string>& objects) {
        return profile_to_json(sample_profile(level, seed, objects));
      },
      py::arg("level"), py::arg("seed"),
      py::arg("objects") = std::vector<std::string>{});

  m.def(
      "apply_enhancement",
      [](int width, int height, const py::bytes& pixels,
         const std::string& profile_json) {
        return image_bytes(apply_enhancement(image_from(width, height, pixels),
                                             profile_from_json(profile_json)));
      },
      py::arg("width"), py::arg("height"), py::arg("pixels"),
      py::arg("profile_json"));
  m.def(
      "apply_gaussian_noise",
      [](int width, int height, const py::bytes& pixels, double mean,
         double var, uint64_t seed) {
        return image_bytes(apply_gaussian_noise(
            image_from(width, height, pixels), mean, var, seed));
      },
      py::arg("width"), py::arg("height"), py::arg("pixels"), py::arg("mean"),
      py::arg("var"), py::arg("seed"));
  m.def(
      "apply_salt_pepper",
      [](int width, int height, const py::bytes& pixels, double prob,
         uint64_t seed) {
        return image_bytes(
            apply_salt_pepper(image_from(width, height, pixels), prob, seed));
      },
      py::arg("width"), py::arg("height"), py::arg("pixels"), py::arg("prob"),
      py::arg("seed"));
  m.def(
      "perturb_camera",
      [](const std::vector<double>& position, uint64_t seed,
         double half_width) {
        if (position.size() != 3)
          throw std::invalid_argument("position needs (x,y,z)");
        Pose pose{{position[0], position[1], position[2]}, Quat::identity()};
        Pose out = perturb_camera(pose, seed, half_width);
        return py::make_tuple(out.position.x, out.position.y, out.position.z);
      },
      py::arg("position"), py::arg("seed"), py::arg("half_width") = 0.105);

  m.def(
      "tree_edit_distance",
      [](const TaskSpec& a, const TaskSpec& b,
         const std::string& cost_model_json) {
        CostModel cm = cost_model_json.empty()
                           ? CostModel::defaults()
                           : CostModel::from_json(cost_model_json);
        return tree_edit_distance(task_to_tree(a), task_to_tree(b), cm);
      },
      py::arg("a"), py::arg("b"), py::arg("cost_model_json") = "");
  m.def(
      "pairwise_matrix",
      [](const std::vector<TaskSpec>& specs,
         const std::string& cost_model_json, int threads) {
        CostModel cm = cost_model_json.empty()
                           ? CostModel::defaults()
                           : CostModel::from_json(cost_model_json);
        std::vector<SyntaxNode> trees;
        std::vector<std::string> names;
        for (const auto& s : specs) {
          trees.push_back(task_to_tree(s));
          names.push_back(s.name);
        }
        DistanceMatrix m = pairwise_matrix(trees, names, cm, threads);
        std::vector<std::vector<double>> rows(m.size());
        for (size_t i = 0; i < m.size(); ++i)
          for (size_t j = 0; j < m.size(); ++j)
            rows[i].push_back(m.at(i, j));
        return rows;
      },
      py::arg("specs"), py::arg("cost_model_json") = "",
      py::arg("threads") = 1);
  m.def(
      "fr_layout",
      [](const std::vector<std::vector<double>>& matrix, uint64_t seed,
         int iterations) {
        DistanceMatrix m;
        m.names.resize(matrix.size());
        m.values.reserve(matrix.size() * matrix.size());
        for (const auto& row : matrix) {
          if (row.size() != matrix.size())
            throw std::invalid_argument("matrix must be square");
          for (double v : row) m.values.push_back(v);
        }
        Layout layout = fr_layout(m, seed, iterations);
        std::vector<std::pair<double, double>> out;
        for (const auto& p : layout) out.emplace_back(p[0], p[1]);
        return out;
      },
      py::arg("matrix"), py::arg("seed"), py::arg("iterations") = 500);
}
