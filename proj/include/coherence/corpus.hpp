#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coherence {

// Data errors map to CLI exit code 1, configuration errors to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : DataError {
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : DataError(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_number(line) {}
  std::size_t line_number;
};

enum class Role { Subject, Object, Other };

char role_letter(Role r);            // 'S', 'O', 'X'
Role role_from_letter(char c);       // throws DataError on anything else

struct EntityMention {
  std::string entity_id;  // normalized (lowercased) id; column identity key
  Role role = Role::Other;
  std::string surface;    // original span, informational only
  bool operator==(const EntityMention&) const = default;
};

struct DAUnit {
  std::string da_tag;
  std::string text;
  std::vector<EntityMention> mentions;  // may be empty
  bool operator==(const DAUnit&) const = default;
};

struct Turn {
  std::string speaker;
  std::vector<DAUnit> units;  // non-empty for a valid dialogue
  bool operator==(const Turn&) const = default;
};

struct Dialogue {
  std::string dialogue_id;
  std::string tagset_id;
  std::vector<Turn> turns;
  std::size_t unit_count() const;
  bool operator==(const Dialogue&) const = default;
};

struct Tagset {
  std::string tagset_id;
  std::vector<std::string> tags;  // declared order is canonical
  bool contains(const std::string& tag) const;
  bool operator==(const Tagset&) const = default;
};

struct SplitAssignment {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::string> dev;
  bool operator==(const SplitAssignment&) const = default;
};

struct Corpus {
  std::vector<Dialogue> dialogues;
  Tagset tagset;
  std::optional<SplitAssignment> split;
  const Dialogue* find(const std::string& dialogue_id) const;
  bool operator==(const Corpus&) const = default;
};

enum class ViolationCode {
  EmptyDialogue,
  EmptyTurn,
  UnknownTag,
  TagsetMismatch,
  EmptyEntityId,
};

const char* violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string dialogue_id;
  int turn_index = -1;  // -1 when not applicable
  int unit_index = -1;
  std::string detail;
  std::string to_string() const;
};

// Returns an empty list iff the dialogue satisfies every invariant.
std::vector<Violation> validate_dialogue(const Dialogue& d, const Tagset& tagset);

Tagset parse_tagset(std::istream& in);
Tagset load_tagset(const std::string& path);
std::string serialize_tagset(const Tagset& t);  // canonical, single line

// Strict parse: throws ParseError on malformed lines, duplicate ids or any
// dialogue that fails validation, so a returned corpus is always clean.
Corpus parse_corpus(std::istream& in, const Tagset& tagset);

// Lenient parse used by the validate command: structural errors still throw,
// semantic problems are collected into `violations` and the offending
// dialogues are kept.
Corpus parse_corpus_lenient(std::istream& in, const Tagset& tagset,
                            std::vector<Violation>& violations);

Corpus load_corpus(const std::string& corpus_path, const std::string& tagset_path);

// Canonical serialization: fixed key order, compact JSON, LF line endings.
std::string serialize_dialogue(const Dialogue& d);  // one line, no trailing \n
void serialize_corpus(const Corpus& c, std::ostream& out);

// Deterministic shuffle-split over sorted dialogue ids. Counts follow the
// largest-remainder rule, so they differ from round(n * ratio) by at most 1.
Corpus split_corpus(const Corpus& c, double train_ratio, double test_ratio,
                    double dev_ratio, std::uint64_t seed,
                    bool override_existing = false);

std::string serialize_split(const SplitAssignment& s, std::uint64_t seed,
                            double train_ratio, double test_ratio, double dev_ratio);
SplitAssignment parse_split(std::istream& in);
SplitAssignment load_split(const std::string& path);

// Validates the split against the corpus (disjoint, ids present) and attaches it.
void attach_split(Corpus& c, SplitAssignment split);

enum class Subset { All, Train, Test, Dev };

// View of the dialogues selected by a subset; pointers into `c`.
std::vector<const Dialogue*> select_subset(const Corpus& c, Subset subset);

}  // namespace coherence
