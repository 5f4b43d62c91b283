// Graded language perturbation (W0-W4), cumulative visual perturbation
// profiles (V0-V4) and the deterministic image operations behind them.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbddl/geometry.hpp"

namespace cbddl {

class PerturbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotEnoughSlotsError : public PerturbError {
 public:
  NotEnoughSlotsError(int requested, int available)
      : PerturbError("level W" + std::to_string(requested) + " needs " +
                     std::to_string(requested) + " slots, template has " +
                     std::to_string(available)) {}
};

// ---------------------------------------------------------------------
// Language

// base<TAB>candidate1|candidate2|...  Lookup is case-insensitive; a
// candidate never equals its base word.
class Lexicon {
 public:
  static Lexicon from_tsv(const std::string& text);
  static Lexicon load_file(const std::string& path);

  const std::vector<std::string>* candidates(const std::string& base) const;
  size_t size() const { return entries_.size(); }
  std::string to_tsv() const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
};

// The curated lexicon shipped with the library (pick/put/push plus the
// fruit/container/region nouns), as TSV text.
const std::string& default_lexicon_tsv();

// Instruction with substitutable slots marked {slot_id:base_word}.
struct TemplateSlot {
  std::string id;
  std::string base;
};

class InstructionTemplate {
 public:
  static InstructionTemplate parse(const std::string& text);

  const std::vector<TemplateSlot>& slots() const { return slots_; }
  // W0: every slot rendered with its base word.
  std::string render_base() const;
  std::string render(const std::vector<std::string>& slot_values) const;

 private:
  std::vector<std::string> literals_;  // slots_.size() + 1 entries
  std::vector<TemplateSlot> slots_;
};

// Replaces exactly `level` distinct slots (chosen uniformly without
// replacement) with uniformly drawn lexicon candidates; all other bytes
// match the W0 rendering. Throws NotEnoughSlotsError.
std::string substitute(const InstructionTemplate& tpl, const Lexicon& lex,
                       int level, uint64_t seed);

// W0 plus every legal substitution with 1..4 slots replaced.
std::vector<std::string> enumerate_variants(const InstructionTemplate& tpl,
                                            const Lexicon& lex);

// Training-time draw: uniform over enumerate_variants.
std::string sample_instruction(const InstructionTemplate& tpl,
                               const Lexicon& lex, uint64_t seed);

// ---------------------------------------------------------------------
// Visual profiles

struct Rgb {
  double r = 0.0, g = 0.0, b = 0.0;
};

// Cumulative hierarchy: stage k populates exactly the fields of stages
// <= k. V0 is all defaults.
struct VisualProfile {
  int level = 0;  // 0..4
  // V1: lighting
  double brightness = 0.0;  // factor deltas, f = 1 + delta
  double contrast = 0.0;
  double saturation = 0.0;
  double temperature = 6500.0;  // Kelvin
  // V2: per-object color (alpha fixed at 1)
  std::map<std::string, Rgb> object_colors;
  // V3: camera extrinsic offset
  Vec3 camera_offset;
  // V4: sensor noise
  struct Gaussian {
    double mean = 0.0;
    double var = 0.0;
  };
  std::optional<Gaussian> noise;
};

struct PerturbRanges {
  double light_delta = 0.75;       // U(-x, x)
  double temperature_lo = 3500.0;  // U(lo, hi) Kelvin
  double temperature_hi = 8500.0;
  double color_lo = 0.2;  // per-channel U(lo, hi)
  double color_hi = 0.8;
  double camera_offset = 0.105;  // U(-x, x) per axis, meters
  double noise_mean = 0.0;
  double noise_var = 0.085;
};

VisualProfile sample_profile(int level, uint64_t seed,
                             const std::vector<std::string>& object_names = {},
                             const PerturbRanges& ranges = {});

std::string profile_to_json(const VisualProfile& p);
VisualProfile profile_from_json(const std::string& text);

// Adds an independent uniform offset to each position coordinate;
// orientation unchanged.
Pose perturb_camera(const Pose& extrinsics, uint64_t seed,
                    double half_width = 0.105);

// ---------------------------------------------------------------------
// Images

struct ImageBuffer {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major RGB

  size_t count() const { return pixels.size(); }
};

// Binary Portable Pixmap (P6, maxval 255), canonical header on write.
ImageBuffer read_ppm(const std::string& path);
void write_ppm(const ImageBuffer& img, const std::string& path);
std::string ppm_bytes(const ImageBuffer& img);

// brightness -> contrast -> saturation -> temperature, each a factor
// f = 1 + delta; identity parameters return byte-identical pixels.
ImageBuffer apply_enhancement(const ImageBuffer& img, const VisualProfile& p);

// Image normalized to [0,1], i.i.d. noise added per channel sample,
// clamped and re-quantized.
ImageBuffer apply_gaussian_noise(const ImageBuffer& img, double mean,
                                 double var, uint64_t seed);

// The raw noise field apply_gaussian_noise adds (before clamping), for
// statistical checks.
std::vector<double> gaussian_field(size_t count, double mean, double var,
                                   uint64_t seed);

// Each pixel selected with probability prob; selected pixels set to 0 or
// 255 (all three channels) with equal probability.
ImageBuffer apply_salt_pepper(const ImageBuffer& img, double prob,
                              uint64_t seed);

// Channel multipliers for a color temperature, normalized so 6500 K is
// (1,1,1). Sampled at 100 K resolution with linear interpolation.
Rgb kelvin_multipliers(double kelvin);
// The underlying table as TSV ("kelvin\tr\tg\tb" rows).
std::string kelvin_table_tsv();

}  // namespace cbddl
