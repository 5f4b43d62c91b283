#include "cbddl/perturb.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cbddl/printer.hpp"
#include "cbddl/rng.hpp"
#include "json.hpp"

namespace cbddl {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

// ---------------------------------------------------------------------
// Lexicon

Lexicon Lexicon::from_tsv(const std::string& text) {
  Lexicon lex;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw PerturbError("lexicon line " + std::to_string(lineno) +
                         ": expected base<TAB>candidates");
    std::string base = lower(line.substr(0, tab));
    std::vector<std::string> cands;
    std::string rest = line.substr(tab + 1);
    size_t start = 0;
    while (start <= rest.size()) {
      size_t bar = rest.find('|', start);
      std::string cand = rest.substr(
          start, bar == std::string::npos ? std::string::npos : bar - start);
      if (!cand.empty()) {
        if (lower(cand) == base)
          throw PerturbError("lexicon candidate equals its base word: " + cand);
        cands.push_back(cand);
      }
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (cands.empty())
      throw PerturbError("lexicon entry '" + base + "' has no candidates");
    lex.entries_[base] = std::move(cands);
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PerturbError("cannot read lexicon '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return from_tsv(os.str());
}

const std::vector<std::string>* Lexicon::candidates(
    const std::string& base) const {
  auto it = entries_.find(lower(base));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string Lexicon::to_tsv() const {
  std::string out;
  for (const auto& [base, cands] : entries_) {
    out += base + "\t";
    for (size_t i = 0; i < cands.size(); ++i) {
      if (i) out += "|";
      out += cands[i];
    }
    out += "\n";
  }
  return out;
}

const std::string& default_lexicon_tsv() {
  static const std::string tsv =
      "apple\tpome|eating apple|cooking apple|crab apple\n"
      "lemon\tcitrus|citrous fruit\n"
      "bowl\tvessel|jorum|fishbowl\n"
      "region\tlocation|zone\n"
      "pick\tchoose|select|grab|seize\n"
      "put\tplace|position|locate\n"
      "push\tshove|nudge|thrust|slide\n";
  return tsv;
}

// ---------------------------------------------------------------------
// Instruction templates

InstructionTemplate InstructionTemplate::parse(const std::string& text) {
  InstructionTemplate tpl;
  std::string literal;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '{') {
      literal += c;
      ++i;
      continue;
    }
    size_t close = text.find('}', i);
    size_t colon = text.find(':', i);
    if (close == std::string::npos || colon == std::string::npos ||
        colon > close)
      throw PerturbError("malformed slot marker near '" + text.substr(i, 12) +
                         "'");
    TemplateSlot slot;
    slot.id = text.substr(i + 1, colon - i - 1);
    slot.base = text.substr(colon + 1, close - colon - 1);
    if (slot.id.empty() || slot.base.empty())
      throw PerturbError("slot marker needs {id:base_word}");
    for (const auto& s : tpl.slots_)
      if (s.id == slot.id)
        throw PerturbError("duplicate slot id '" + slot.id + "'");
    tpl.literals_.push_back(literal);
    tpl.slots_.push_back(std::move(slot));
    literal.clear();
    i = close + 1;
  }
  tpl.literals_.push_back(literal);
  return tpl;
}

std::string InstructionTemplate::render_base() const {
  std::vector<std::string> values;
  values.reserve(slots_.size());
  for (const auto& s : slots_) values.push_back(s.base);
  return render(values);
}

std::string InstructionTemplate::render(
    const std::vector<std::string>& slot_values) const {
  std::string out = literals_[0];
  for (size_t i = 0; i < slots_.size(); ++i) {
    out += slot_values.at(i);
    out += literals_[i + 1];
  }
  return out;
}

std::string substitute(const InstructionTemplate& tpl, const Lexicon& lex,
                       int level, uint64_t seed) {
  const auto& slots = tpl.slots();
  if (level < 0 || static_cast<size_t>(level) > slots.size())
    throw NotEnoughSlotsError(level, static_cast<int>(slots.size()));

  std::vector<std::string> values;
  for (const auto& s : slots) values.push_back(s.base);
  if (level == 0) return tpl.render(values);

  RandomStream rng(seed);
  // Partial Fisher-Yates: the first `level` entries are a uniform draw
  // without replacement.
  std::vector<size_t> order(slots.size());
  std::iota(order.begin(), order.end(), size_t{0});
  for (int i = 0; i < level; ++i) {
    size_t j = i + rng.uniform_int(order.size() - i);
    std::swap(order[i], order[j]);
  }
  for (int i = 0; i < level; ++i) {
    const TemplateSlot& slot = slots[order[i]];
    const auto* cands = lex.candidates(slot.base);
    if (!cands)
      throw PerturbError("base word '" + slot.base + "' not in lexicon");
    values[order[i]] = (*cands)[rng.uniform_int(cands->size())];
  }
  return tpl.render(values);
}

std::vector<std::string> enumerate_variants(const InstructionTemplate& tpl,
                                            const Lexicon& lex) {
  const auto& slots = tpl.slots();
  std::vector<std::string> out{tpl.render_base()};
  int max_k = std::min<size_t>(4, slots.size());

  std::vector<std::string> values;
  for (const auto& s : slots) values.push_back(s.base);

  // Recursively pick subset members in increasing index order.
  std::vector<size_t> chosen;
  auto emit = [&](auto&& self, size_t slot_i) -> void {
    if (slot_i == chosen.size()) {
      out.push_back(tpl.render(values));
      return;
    }
    size_t idx = chosen[slot_i];
    const auto* cands = lex.candidates(slots[idx].base);
    if (!cands)
      throw PerturbError("base word '" + slots[idx].base + "' not in lexicon");
    for (const auto& c : *cands) {
      values[idx] = c;
      self(self, slot_i + 1);
    }
    values[idx] = slots[idx].base;
  };
  auto subsets = [&](auto&& self, size_t start, int remaining) -> void {
    if (remaining == 0) {
      emit(emit, 0);
      return;
    }
    for (size_t i = start; i + remaining <= slots.size(); ++i) {
      chosen.push_back(i);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  for (int k = 1; k <= max_k; ++k) subsets(subsets, 0, k);
  return out;
}

std::string sample_instruction(const InstructionTemplate& tpl,
                               const Lexicon& lex, uint64_t seed) {
  std::vector<std::string> variants = enumerate_variants(tpl, lex);
  RandomStream rng(seed);
  return variants[rng.uniform_int(variants.size())];
}

// ---------------------------------------------------------------------
// Visual profiles

VisualProfile sample_profile(int level, uint64_t seed,
                             const std::vector<std::string>& object_names,
                             const PerturbRanges& r) {
  if (level < 0 || level > 4)
    throw PerturbError("visual level must be in 0..4");
  VisualProfile p;
  p.level = level;
  RandomStream rng(seed);
  if (level >= 1) {
    p.brightness = rng.uniform(-r.light_delta, r.light_delta);
    p.contrast = rng.uniform(-r.light_delta, r.light_delta);
    p.saturation = rng.uniform(-r.light_delta, r.light_delta);
    p.temperature = rng.uniform(r.temperature_lo, r.temperature_hi);
  }
  if (level >= 2) {
    for (const auto& name : object_names) {
      Rgb c{rng.uniform(r.color_lo, r.color_hi),
            rng.uniform(r.color_lo, r.color_hi),
            rng.uniform(r.color_lo, r.color_hi)};
      p.object_colors[name] = c;
    }
  }
  if (level >= 3) {
    p.camera_offset = {rng.uniform(-r.camera_offset, r.camera_offset),
                       rng.uniform(-r.camera_offset, r.camera_offset),
                       rng.uniform(-r.camera_offset, r.camera_offset)};
  }
  if (level >= 4) p.noise = VisualProfile::Gaussian{r.noise_mean, r.noise_var};
  return p;
}

std::string profile_to_json(const VisualProfile& p) {
  nlohmann::json colors = nlohmann::json::object();
  for (const auto& [name, c] : p.object_colors)
    colors[name] = nlohmann::json::array({c.r, c.g, c.b, 1.0});
  nlohmann::json j{
      {"level", "V" + std::to_string(p.level)},
      {"brightness", p.brightness},
      {"contrast", p.contrast},
      {"saturation", p.saturation},
      {"temperature", p.temperature},
      {"object_colors", std::move(colors)},
      {"camera_offset",
       nlohmann::json::array(
           {p.camera_offset.x, p.camera_offset.y, p.camera_offset.z})},
  };
  if (p.noise)
    j["noise"] = {{"mean", p.noise->mean}, {"var", p.noise->var}};
  else
    j["noise"] = nullptr;
  return j.dump(2);
}

VisualProfile profile_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  VisualProfile p;
  std::string level = j.at("level");
  p.level = std::stoi(level.substr(1));
  p.brightness = j.at("brightness");
  p.contrast = j.at("contrast");
  p.saturation = j.at("saturation");
  p.temperature = j.at("temperature");
  for (const auto& [name, c] : j.at("object_colors").items())
    p.object_colors[name] = {c.at(0), c.at(1), c.at(2)};
  const auto& off = j.at("camera_offset");
  p.camera_offset = {off.at(0), off.at(1), off.at(2)};
  if (!j.at("noise").is_null())
    p.noise =
        VisualProfile::Gaussian{j["noise"].at("mean"), j["noise"].at("var")};
  return p;
}

Pose perturb_camera(const Pose& extrinsics, uint64_t seed,
                    double half_width) {
  RandomStream rng(seed);
  Pose out = extrinsics;
  out.position.x += rng.uniform(-half_width, half_width);
  out.position.y += rng.uniform(-half_width, half_width);
  out.position.z += rng.uniform(-half_width, half_width);
  return out;
}

// ---------------------------------------------------------------------
// Images

ImageBuffer read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PerturbError("cannot read image '" + path + "'");
  std::string magic;
  in >> magic;
  if (magic != "P6") throw PerturbError("'" + path + "' is not a P6 pixmap");
  auto next_int = [&]() -> int {
    // Skip whitespace and '#' comments between header fields.
    while (true) {
      int c = in.peek();
      if (c == '#') {
        std::string comment;
        std::getline(in, comment);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    int v = 0;
    in >> v;
    return v;
  };
  ImageBuffer img;
  img.width = next_int();
  img.height = next_int();
  int maxval = next_int();
  if (img.width <= 0 || img.height <= 0 || maxval != 255)
    throw PerturbError("unsupported pixmap header in '" + path + "'");
  in.get();  // single whitespace after maxval
  img.pixels.resize(static_cast<size_t>(img.width) * img.height * 3);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
    throw PerturbError("truncated pixmap '" + path + "'");
  return img;
}

std::string ppm_bytes(const ImageBuffer& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()),
             img.pixels.size());
  return out;
}

void write_ppm(const ImageBuffer& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PerturbError("cannot write image '" + path + "'");
  std::string bytes = ppm_bytes(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

namespace {

uint8_t quantize(double v) {
  double c = std::clamp(v, 0.0, 255.0);
  return static_cast<uint8_t>(std::lround(c));
}

double gray_of(double r, double g, double b) {
  // ITU-R 601 luma, the "L" conversion of common imaging libraries.
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

}  // namespace

ImageBuffer apply_enhancement(const ImageBuffer& img, const VisualProfile& p) {
  std::vector<double> px(img.pixels.begin(), img.pixels.end());
  const size_t n = px.size();

  double fb = 1.0 + p.brightness;
  for (size_t i = 0; i < n; ++i) px[i] = std::clamp(px[i] * fb, 0.0, 255.0);

  double fc = 1.0 + p.contrast;
  double mean = 0.0;
  for (size_t i = 0; i + 2 < n; i += 3)
    mean += gray_of(px[i], px[i + 1], px[i + 2]);
  if (n >= 3) mean /= static_cast<double>(n / 3);
  for (size_t i = 0; i < n; ++i)
    px[i] = std::clamp(mean + fc * (px[i] - mean), 0.0, 255.0);

  double fs = 1.0 + p.saturation;
  for (size_t i = 0; i + 2 < n; i += 3) {
    double gray = gray_of(px[i], px[i + 1], px[i + 2]);
    for (int c = 0; c < 3; ++c)
      px[i + c] = std::clamp(gray + fs * (px[i + c] - gray), 0.0, 255.0);
  }

  Rgb m = kelvin_multipliers(p.temperature);
  for (size_t i = 0; i + 2 < n; i += 3) {
    px[i] = std::clamp(px[i] * m.r, 0.0, 255.0);
    px[i + 1] = std::clamp(px[i + 1] * m.g, 0.0, 255.0);
    px[i + 2] = std::clamp(px[i + 2] * m.b, 0.0, 255.0);
  }

  ImageBuffer out;
  out.width = img.width;
  out.height = img.height;
  out.pixels.resize(n);
  for (size_t i = 0; i < n; ++i) out.pixels[i] = quantize(px[i]);
  return out;
}

std::vector<double> gaussian_field(size_t count, double mean, double var,
                                   uint64_t seed) {
  std::vector<double> field(count);
  RandomStream rng(seed);
  double stddev = std::sqrt(var);
  for (size_t i = 0; i < count; ++i) field[i] = rng.normal(mean, stddev);
  return field;
}

ImageBuffer apply_gaussian_noise(const ImageBuffer& img, double mean,
                                 double var, uint64_t seed) {
  std::vector<double> noise = gaussian_field(img.count(), mean, var, seed);
  ImageBuffer out;
  out.width = img.width;
  out.height = img.height;
  out.pixels.resize(img.count());
  for (size_t i = 0; i < img.count(); ++i) {
    double v = img.pixels[i] / 255.0 + noise[i];
    out.pixels[i] = quantize(std::clamp(v, 0.0, 1.0) * 255.0);
  }
  return out;
}

ImageBuffer apply_salt_pepper(const ImageBuffer& img, double prob,
                              uint64_t seed) {
  if (prob < 0.0 || prob > 1.0)
    throw PerturbError("salt_pepper probability must be in [0, 1]");
  ImageBuffer out = img;
  RandomStream rng(seed);
  size_t pixels = img.count() / 3;
  for (size_t i = 0; i < pixels; ++i) {
    if (rng.uniform01() >= prob) continue;
    uint8_t v = rng.uniform01() < 0.5 ? 0 : 255;
    out.pixels[3 * i] = v;
    out.pixels[3 * i + 1] = v;
    out.pixels[3 * i + 2] = v;
  }
  return out;
}

// ---------------------------------------------------------------------
// Color temperature

namespace {

constexpr double kKelvinLo = 1000.0;
constexpr double kKelvinHi = 12000.0;
constexpr double kKelvinStep = 100.0;
constexpr int kKelvinRows = 111;

// Tanner Helland's black-body approximation sampled every 100 K and
// normalized so 6500 K maps to (1,1,1). Frozen as literals: libm calls
// are not bit-identical across compilers, and this table is a data
// contract (data/kelvin_rgb.tsv ships the same bytes).
constexpr std::array<std::array<double, 3>, kKelvinRows> kKelvinTable{{
    {1, 0.26728738199170887, 0}, {1, 0.304596330677123, 0},
    {1, 0.3386567322608582, 0}, {1, 0.36998926441392477, 0},
    {1, 0.3989986581212887, 0}, {1, 0.42600575754393866, 0},
    {1, 0.4512692118601259, 0}, {1, 0.4750005793705602, 0},
    {1, 0.4973751078130879, 0}, {1, 0.5185395960983582, 0},
    {1, 0.5386182371432063, 0.05560695961377459}, {1, 0.5577170336735185, 0.10840670808979486},
    {1, 0.5759271858286206, 0.15660910188483992}, {1, 0.593327725121866, 0.2009510057735844},
    {1, 0.6099875874123558, 0.2420051963943314}, {1, 0.6259672624262866, 0.28022573347261875},
    {1, 0.6413201195654223, 0.3159786581872087}, {1, 0.6560934833653178, 0.34956336855008185},
    {1, 0.6703295132727862, 0.38122787574368405}, {1, 0.6840659289718228, 0.41117993007543274},
    {1, 0.6973366126954361, 0.4395952897749875}, {1, 0.7101721127398004, 0.46662397025317554},
    {1, 0.7226000670116234, 0.492395038251008}, {1, 0.7346455613808502, 0.5170203394294797},
    {1, 0.7463314345220577, 0.540597432046053}, {1, 0.7576785385558665, 0.5632119213627663},
    {1, 0.7687059629645854, 0.5849393359347975}, {1, 0.7794312278220856, 0.6058466496025282},
    {1, 0.7898704512498558, 0.6259935265555445}, {1, 0.800038495117652, 0.6454333478163011},
    {1, 0.8099490922947038, 0.664214063633832}, {1, 0.8196149581857802, 0.6823789060586555},
    {1, 0.829047888825016, 0.6999669883484219}, {1, 0.838258847425887, 0.7170138121098519},
    {1, 0.8472580409801179, 0.733551698711295}, {1, 0.8560549882476658, 0.7496101581433232},
    {1, 0.8646585802733635, 0.765216205904897}, {1, 0.8730771343948036, 0.7803946364629283},
    {1, 0.8813184425638533, 0.7951682602366459}, {1, 0.8893898146854464, 0.8095581097936417},
    {1, 0.8972981175777841, 0.8235836199362007}, {1, 0.9050498100742873, 0.8372627855475141},
    {1, 0.9126509747169199, 0.850612300414389}, {1, 0.9201073464305229, 0.8636476797130593},
    {1, 0.9274243385168153, 0.8763833684122208}, {1, 0.9346070662631984, 0.8888328374926758},
    {1, 0.9416603684242839, 0.9010086695906928}, {1, 0.9485888268020856, 0.9129226354301423},
    {1, 0.9553967841233201, 0.9245857622072663}, {1, 0.9620883603884973, 0.93600839492388},
    {1, 0.9686674678469335, 0.9472002515239795}, {1, 0.9751378247339892, 0.958170472570139},
    {1, 0.9815029678912979, 0.9689276660960107}, {1, 0.9877662643772457, 0.9794799481863362},
    {1, 0.9939309221631207, 0.9898349797637414}, {1, 1, 1},
    {1, 1.0035020889797424, 1.0198290426197802}, {0.9977138695348023, 0.9788977397022238, 1.0198290426197802},
    {0.980124411709384, 0.9690765233800824, 1.0198290426197802}, {0.9648669859344124, 0.9604954183151181, 1.0198290426197802},
    {0.9514201197662264, 0.9528837649021278, 1.0198290426197802}, {0.9394174618873457, 0.9460501636749814, 1.0198290426197802},
    {0.92859215954344, 0.9398543756810159, 1.0198290426197802}, {0.9187440392731107, 0.9341906418917235, 1.0198290426197802},
    {0.9097192432936254, 0.9289772765843668, 1.0198290426197802}, {0.9013970605078236, 0.9241499039053824, 1.0198290426197802},
    {0.8936811097650761, 0.9196569089691916, 1.0198290426197802}, {0.8864932603112867, 0.9154562879024071, 1.0198290426197802},
    {0.8797693317950178, 0.9115134111450369, 1.0198290426197802}, {0.8734559849092142, 0.9077994001228737, 1.0198290426197802},
    {0.8675084288560855, 0.9042899262281601, 1.0198290426197802}, {0.8618887016954847, 0.9009643069885923, 1.0198290426197802},
    {0.8565643604447896, 0.8978048154757446, 1.0198290426197802}, {0.8515074694352764, 0.8947961453977985, 1.0198290426197802},
    {0.8466938092202043, 0.891924991645853, 1.0198290426197802}, {0.8421022509183214, 0.8891797176778731, 1.0198290426197802},
    {0.8377142562704534, 0.8865500890615687, 1.0198290426197802}, {0.8335134743627397, 0.8840270580165409, 1.0198290426197802},
    {0.8294854134929497, 0.8816025876948366, 1.0198290426197802}, {0.8256171720352922, 0.8792695077334696, 1.0198290426197802},
    {0.8218972160571649, 0.8770213946421844, 1.0198290426197802}, {0.8183151943012548, 0.8748524720822455, 1.0198290426197802},
    {0.8148617832689486, 0.8727575272020577, 1.0198290426197802}, {0.8115285567330771, 0.8707318400297432, 1.0198290426197802},
    {0.8083078752140685, 0.8687711235560841, 1.0198290426197802}, {0.8051927918756929, 0.8668714726263484, 1.0198290426197802},
    {0.8021769720076888, 0.8650293201343255, 1.0198290426197802}, {0.7992546238154251, 0.8632413993038105, 1.0198290426197802},
    {0.7964204386698478, 0.8615047110718682, 1.0198290426197802}, {0.793669539312689, 0.8598164957692496, 1.0198290426197802},
    {0.7909974347833513, 0.858174208437398, 1.0198290426197802}, {0.7883999810508835, 0.8565754972368221, 1.0198290426197802},
    {0.7858733465089826, 0.8550181844945194, 1.0198290426197802}, {0.7834139816331169, 0.8535002500134069, 1.0198290426197802},
    {0.7810185922136674, 0.8520198163280042, 1.0198290426197802}, {0.7786841156728196, 0.8505751356407953, 1.0198290426197802},
    {0.7764077000500279, 0.8491645782149798, 1.0198290426197802}, {0.7741866853044909, 0.8477866220334243, 1.0198290426197802},
    {0.7720185866358082, 0.8464398435619518, 1.0198290426197802}, {0.7699010795678982, 0.845122909478701, 1.0198290426197802},
    {0.7678319865779429, 0.843834569251044, 1.0198290426197802}, {0.765809265082929, 0.8425736484581523, 1.0198290426197802},
    {0.7638309966222795, 0.8413390427712855, 1.0198290426197802}, {0.7618953770969948, 0.8401297125157312, 1.0198290426197802},
    {0.7600007079443154, 0.8389446777483762, 1.0198290426197802}, {0.7581453881427314, 0.837783013793454, 1.0198290426197802},
    {0.7563279069556765, 0.8366438471863386, 1.0198290426197802}, {0.7545468373338009, 0.8355263519815305, 1.0198290426197802},
    {0.7528008299056423, 0.8344297463863678, 1.0198290426197802}, {0.7510886074950716, 0.8333532896866556, 1.0198290426197802},
    {0.7494089601112638, 0.8322962794344152, 1.0198290426197802},
}};

const std::array<std::array<double, 3>, kKelvinRows>& kelvin_table() {
  return kKelvinTable;
}

}  // namespace

Rgb kelvin_multipliers(double kelvin) {
  const auto& table = kelvin_table();
  double k = std::clamp(kelvin, kKelvinLo, kKelvinHi);
  double pos = (k - kKelvinLo) / kKelvinStep;
  int i = std::min(static_cast<int>(pos), kKelvinRows - 2);
  double t = pos - i;
  if (t == 0.0) return {table[i][0], table[i][1], table[i][2]};
  return {table[i][0] + t * (table[i + 1][0] - table[i][0]),
          table[i][1] + t * (table[i + 1][1] - table[i][1]),
          table[i][2] + t * (table[i + 1][2] - table[i][2])};
}

std::string kelvin_table_tsv() {
  std::string out = "kelvin\tr\tg\tb\n";
  const auto& table = kelvin_table();
  for (int i = 0; i < kKelvinRows; ++i) {
    out += format_number(kKelvinLo + i * kKelvinStep) + "\t" +
           format_number(table[i][0]) + "\t" + format_number(table[i][1]) +
           "\t" + format_number(table[i][2]) + "\n";
  }
  return out;
}

}  // namespace cbddl
