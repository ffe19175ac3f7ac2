#include "coherence/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "coherence/rng.hpp"
#include "json.hpp"

namespace coherence {

using ordered_json = nlohmann::ordered_json;

char role_letter(Role r) {
  switch (r) {
    case Role::Subject: return 'S';
    case Role::Object: return 'O';
    case Role::Other: return 'X';
  }
  return '?';
}

Role role_from_letter(char c) {
  switch (c) {
    case 'S': return Role::Subject;
    case 'O': return Role::Object;
    case 'X': return Role::Other;
  }
  throw DataError(std::string("invalid syntactic role '") + c + "' (expected S, O or X)");
}

std::size_t Dialogue::unit_count() const {
  std::size_t n = 0;
  for (const auto& t : turns) n += t.units.size();
  return n;
}

bool Tagset::contains(const std::string& tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

const Dialogue* Corpus::find(const std::string& dialogue_id) const {
  for (const auto& d : dialogues)
    if (d.dialogue_id == dialogue_id) return &d;
  return nullptr;
}

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyDialogue: return "EMPTY_DIALOGUE";
    case ViolationCode::EmptyTurn: return "EMPTY_TURN";
    case ViolationCode::UnknownTag: return "UNKNOWN_TAG";
    case ViolationCode::TagsetMismatch: return "TAGSET_MISMATCH";
    case ViolationCode::EmptyEntityId: return "EMPTY_ENTITY_ID";
  }
  return "UNKNOWN";
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << dialogue_id;
  if (turn_index >= 0) os << " turn " << turn_index;
  if (unit_index >= 0) os << " unit " << unit_index;
  os << ": " << violation_code_name(code);
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string lower_ascii(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<Violation> validate_dialogue(const Dialogue& d, const Tagset& tagset) {
  std::vector<Violation> out;
  if (d.turns.empty())
    out.push_back({ViolationCode::EmptyDialogue, d.dialogue_id, -1, -1, "dialogue has no turns"});
  if (d.tagset_id != tagset.tagset_id)
    out.push_back({ViolationCode::TagsetMismatch, d.dialogue_id, -1, -1,
                   "dialogue declares tagset '" + d.tagset_id + "', corpus tagset is '" +
                       tagset.tagset_id + "'"});
  for (std::size_t t = 0; t < d.turns.size(); ++t) {
    const Turn& turn = d.turns[t];
    if (turn.units.empty()) {
      out.push_back({ViolationCode::EmptyTurn, d.dialogue_id, static_cast<int>(t), -1,
                     "turn has no DA units"});
      continue;
    }
    for (std::size_t u = 0; u < turn.units.size(); ++u) {
      const DAUnit& unit = turn.units[u];
      if (!tagset.contains(unit.da_tag))
        out.push_back({ViolationCode::UnknownTag, d.dialogue_id, static_cast<int>(t),
                       static_cast<int>(u), "tag '" + unit.da_tag + "'"});
      for (const EntityMention& m : unit.mentions) {
        if (m.entity_id.empty() || is_blank(m.entity_id))
          out.push_back({ViolationCode::EmptyEntityId, d.dialogue_id, static_cast<int>(t),
                         static_cast<int>(u), "blank entity id"});
      }
    }
  }
  return out;
}

Tagset parse_tagset(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed tagset JSON: ") + e.what());
  }
  Tagset t;
  try {
    t.tagset_id = j.at("tagset_id").get<std::string>();
    for (const auto& tag : j.at("tags")) t.tags.push_back(tag.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad tagset schema: ") + e.what());
  }
  if (t.tagset_id.empty()) throw ParseError("tagset_id is empty");
  if (t.tags.empty()) throw ParseError("tagset '" + t.tagset_id + "' declares no tags");
  std::unordered_set<std::string> seen;
  for (const auto& tag : t.tags)
    if (!seen.insert(tag).second)
      throw ParseError("duplicate tag '" + tag + "' in tagset '" + t.tagset_id + "'");
  return t;
}

Tagset load_tagset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open tagset file: " + path);
  return parse_tagset(in);
}

std::string serialize_tagset(const Tagset& t) {
  ordered_json j;
  j["tagset_id"] = t.tagset_id;
  j["tags"] = t.tags;
  return j.dump();
}

namespace {

Dialogue dialogue_from_json(const ordered_json& j, std::size_t line) {
  Dialogue d;
  try {
    d.dialogue_id = j.at("dialogue_id").get<std::string>();
    d.tagset_id = j.at("tagset_id").get<std::string>();
    for (const auto& jt : j.at("turns")) {
      Turn turn;
      turn.speaker = jt.at("speaker").get<std::string>();
      for (const auto& ju : jt.at("units")) {
        DAUnit unit;
        unit.da_tag = ju.at("da_tag").get<std::string>();
        unit.text = ju.at("text").get<std::string>();
        for (const auto& jm : ju.at("mentions")) {
          EntityMention m;
          m.entity_id = lower_ascii(jm.at("entity").get<std::string>());
          const std::string role = jm.at("role").get<std::string>();
          if (role.size() != 1)
            throw ParseError("invalid role '" + role + "' in dialogue '" + d.dialogue_id + "'",
                             line);
          m.role = role_from_letter(role[0]);
          m.surface = jm.at("surface").get<std::string>();
          unit.mentions.push_back(std::move(m));
        }
        turn.units.push_back(std::move(unit));
      }
      d.turns.push_back(std::move(turn));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad dialogue schema: " + std::string(e.what()), line);
  }
  return d;
}

}  // namespace

Corpus parse_corpus_lenient(std::istream& in, const Tagset& tagset,
                            std::vector<Violation>& violations) {
  Corpus corpus;
  corpus.tagset = tagset;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || is_blank(line)) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("malformed JSON: " + std::string(e.what()), line_no);
    }
    Dialogue d = dialogue_from_json(j, line_no);
    if (!ids.insert(d.dialogue_id).second)
      throw ParseError("duplicate dialogue_id '" + d.dialogue_id + "'", line_no);
    auto v = validate_dialogue(d, tagset);
    violations.insert(violations.end(), v.begin(), v.end());
    corpus.dialogues.push_back(std::move(d));
  }
  return corpus;
}

Corpus parse_corpus(std::istream& in, const Tagset& tagset) {
  std::vector<Violation> violations;
  Corpus corpus = parse_corpus_lenient(in, tagset, violations);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "corpus has " << violations.size() << " violation(s); first: "
       << violations.front().to_string();
    throw DataError(os.str());
  }
  return corpus;
}

Corpus load_corpus(const std::string& corpus_path, const std::string& tagset_path) {
  Tagset tagset = load_tagset(tagset_path);
  std::ifstream in(corpus_path);
  if (!in) throw DataError("cannot open corpus file: " + corpus_path);
  return parse_corpus(in, tagset);
}

std::string serialize_dialogue(const Dialogue& d) {
  ordered_json j;
  j["dialogue_id"] = d.dialogue_id;
  j["tagset_id"] = d.tagset_id;
  ordered_json turns = ordered_json::array();
  for (const Turn& t : d.turns) {
    ordered_json jt;
    jt["speaker"] = t.speaker;
    ordered_json units = ordered_json::array();
    for (const DAUnit& u : t.units) {
      ordered_json ju;
      ju["da_tag"] = u.da_tag;
      ju["text"] = u.text;
      ordered_json mentions = ordered_json::array();
      for (const EntityMention& m : u.mentions) {
        ordered_json jm;
        jm["entity"] = m.entity_id;
        jm["role"] = std::string(1, role_letter(m.role));
        jm["surface"] = m.surface;
        mentions.push_back(std::move(jm));
      }
      ju["mentions"] = std::move(mentions);
      units.push_back(std::move(ju));
    }
    jt["units"] = std::move(units);
    turns.push_back(std::move(jt));
  }
  j["turns"] = std::move(turns);
  return j.dump();
}

void serialize_corpus(const Corpus& c, std::ostream& out) {
  for (const Dialogue& d : c.dialogues) out << serialize_dialogue(d) << '\n';
}

Corpus split_corpus(const Corpus& c, double train_ratio, double test_ratio,
                    double dev_ratio, std::uint64_t seed, bool override_existing) {
  if (c.split.has_value() && !override_existing)
    throw ConfigError("corpus already has a split; pass the override flag to re-split");
  if (train_ratio < 0 || test_ratio < 0 || dev_ratio < 0 ||
      std::abs(train_ratio + test_ratio + dev_ratio - 1.0) > 1e-9)
    throw ConfigError("split ratios must be non-negative and sum to 1");
  if (c.dialogues.empty()) throw DataError("cannot split an empty corpus");

  std::vector<std::string> ids;
  ids.reserve(c.dialogues.size());
  for (const auto& d : c.dialogues) ids.push_back(d.dialogue_id);
  std::sort(ids.begin(), ids.end());
  Rng rng(splitmix64(seed));
  rng.shuffle(ids);

  // largest-remainder apportionment of |ids| over the three ratios
  const std::size_t n = ids.size();
  const double raw[3] = {n * train_ratio, n * test_ratio, n * dev_ratio};
  std::size_t counts[3];
  double frac[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = static_cast<std::size_t>(std::floor(raw[i]));
    frac[i] = raw[i] - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::size_t leftover = n - assigned;
  while (leftover > 0) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (frac[i] > frac[best]) best = i;
    counts[best] += 1;
    frac[best] = -1.0;
    --leftover;
  }

  SplitAssignment split;
  split.train.assign(ids.begin(), ids.begin() + counts[0]);
  split.test.assign(ids.begin() + counts[0], ids.begin() + counts[0] + counts[1]);
  split.dev.assign(ids.begin() + counts[0] + counts[1], ids.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.dev.begin(), split.dev.end());

  Corpus out = c;
  out.split = std::move(split);
  return out;
}

std::string serialize_split(const SplitAssignment& s, std::uint64_t seed,
                            double train_ratio, double test_ratio, double dev_ratio) {
  ordered_json j;
  j["seed"] = seed;
  j["ratios"] = {train_ratio, test_ratio, dev_ratio};
  j["train"] = s.train;
  j["test"] = s.test;
  j["dev"] = s.dev;
  return j.dump();
}

SplitAssignment parse_split(std::istream& in) {
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed split JSON: ") + e.what());
  }
  SplitAssignment s;
  try {
    for (const auto& id : j.at("train")) s.train.push_back(id.get<std::string>());
    for (const auto& id : j.at("test")) s.test.push_back(id.get<std::string>());
    for (const auto& id : j.at("dev")) s.dev.push_back(id.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad split schema: ") + e.what());
  }
  return s;
}

SplitAssignment load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open split file: " + path);
  return parse_split(in);
}

void attach_split(Corpus& c, SplitAssignment split) {
  std::unordered_set<std::string> known;
  for (const auto& d : c.dialogues) known.insert(d.dialogue_id);
  std::unordered_set<std::string> seen;
  auto check = [&](const std::vector<std::string>& part, const char* name) {
    for (const auto& id : part) {
      if (!known.count(id))
        throw DataError("split " + std::string(name) + " references unknown dialogue '" + id + "'");
      if (!seen.insert(id).second)
        throw DataError("split is not disjoint: dialogue '" + id + "' appears twice");
    }
  };
  check(split.train, "train");
  check(split.test, "test");
  check(split.dev, "dev");
  c.split = std::move(split);
}

std::vector<const Dialogue*> select_subset(const Corpus& c, Subset subset) {
  std::vector<const Dialogue*> out;
  if (subset == Subset::All) {
    for (const auto& d : c.dialogues) out.push_back(&d);
    return out;
  }
  if (!c.split.has_value())
    throw ConfigError("corpus has no split; cannot select a train/test/dev subset");
  const std::vector<std::string>* ids = nullptr;
  switch (subset) {
    case Subset::Train: ids = &c.split->train; break;
    case Subset::Test: ids = &c.split->test; break;
    case Subset::Dev: ids = &c.split->dev; break;
    case Subset::All: break;
  }
  // preserve corpus order for determinism
  std::unordered_set<std::string> wanted(ids->begin(), ids->end());
  for (const auto& d : c.dialogues)
    if (wanted.count(d.dialogue_id)) out.push_back(&d);
  return out;
}

}  // namespace coherence
