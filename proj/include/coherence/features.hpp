#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/grid.hpp"

namespace coherence {

// The seven document representations the toolkit knows how to featurize.
enum class ModelName {
  TGridRole,
  TGridPresence,
  DGridRole,
  DGridDA,
  OnlyDAs,
  TGridPresenceOnlyDAs,  // concatenation: presence features + DA features
  TGridRoleOnlyDAs,      // concatenation: role features + DA features
};

const char* model_name_string(ModelName m);          // display name, e.g. "T-Grid:role"
std::string model_slug(ModelName m);                 // filesystem-safe name
std::optional<ModelName> parse_model_name(std::string_view name);  // lenient
std::vector<ModelName> all_models();
bool is_combination_model(ModelName m);

// Grid construction parameters implied by a single-grid model.
GridSpec grid_spec_for(ModelName m, const std::string& tagset_id);

struct FeatureSpec {
  ModelName model = ModelName::TGridRole;
  int n = 2;         // transition length, 2..4
  int saliency = 1;  // min number of rows a column must be non-absent in
  std::string tagset_id;
  bool operator==(const FeatureSpec&) const = default;
};

// Ordered enumeration of all |alphabet|^n transitions, lexicographic over the
// declared tag order. Index arithmetic is mixed-radix over alphabet positions.
struct TransitionVocabulary {
  std::vector<std::string> alphabet;
  int n = 2;

  std::size_t size() const;
  std::vector<std::string> tuple_at(std::size_t index) const;
  std::string tuple_label(std::size_t index) const;  // e.g. "S,-"
  std::optional<std::size_t> index_of(std::span<const std::string> tags) const;
  std::uint64_t fingerprint() const;
};

// Alphabets: Role {S,O,X,-}, Presence {X,-}, DA {-} + declared tags.
TransitionVocabulary transition_vocabulary(CellVocab vocab, int n,
                                           const Tagset* tagset = nullptr);
// Only-DAs drops entities entirely, so the absent tag never occurs.
TransitionVocabulary only_das_vocabulary(int n, const Tagset& tagset);
// Vocabulary used when featurizing a given grid.
TransitionVocabulary vocabulary_for_grid(const GridSpec& spec, int n, const Tagset& tagset);

std::uint64_t combined_fingerprint(std::uint64_t first, std::uint64_t second);

struct FeatureVector {
  std::vector<double> values;
  std::uint64_t vocab_fingerprint = 0;
  std::string model_name;

  double sum() const;
  bool operator==(const FeatureVector&) const = default;
};

// Transition-probability features for one grid: every n-window down every
// column surviving the saliency filter counts once; values are normalized by
// the total window count so a non-degenerate vector is a distribution.
// Degenerate grids (fewer than n rows, or no surviving columns) give all zeros.
FeatureVector extract_features(const Grid& g, const FeatureSpec& spec, const Tagset& tagset);

// Model dispatch: single-grid models build + extract, combination models
// concatenate the entity-part vector and the Only-DAs vector in that order,
// each normalized on its own grid.
FeatureVector featurize_dialogue(const Dialogue& d, const FeatureSpec& spec,
                                 const Tagset& tagset);

// Stable sparse text record: id, model, fingerprint, index:value pairs with
// 12 significant digits. One line, LF appended by the caller.
std::string format_feature_record(const std::string& dialogue_id, const FeatureVector& fv);

std::string fingerprint_hex(std::uint64_t fp);

}  // namespace coherence
