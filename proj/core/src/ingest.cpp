// Copyright 2026 The DAAC Authors
// SPDX-License-Identifier: Apache-2.0

#include "daac/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace daac {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  return in;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#';
}

std::vector<std::string> split_fields(const std::string& line,
                                      std::size_t expected,
                                      const std::string& path, index line_no) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t tab = line.find('\t', begin);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, tab - begin));
    begin = tab + 1;
  }
  if (fields.size() != expected) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(expected) + " tab-separated fields, got " +
                     std::to_string(fields.size()));
  }
  for (const auto& f : fields) {
    if (f.empty()) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": empty field");
    }
  }
  return fields;
}

real parse_real(const std::string& text, const std::string& path,
                index line_no) {
  real value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not a number: '" + text + "'");
  }
  return value;
}

// Strips a trailing carriage return so CRLF files parse too.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

InteractionTable load_interactions(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::map<std::pair<std::string, std::string>, real> summed;
  std::string line;
  index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_fields(line, 3, path, line_no);
    const real weight = parse_real(fields[2], path, line_no);
    if (weight <= 0.0) {
      throw DomainError(path + ":" + std::to_string(line_no) +
                        ": interaction weight must be positive, got " +
                        fields[2]);
    }
    summed[{fields[0], fields[1]}] += weight;
  }
  InteractionTable table;
  table.records.reserve(summed.size());
  for (const auto& [key, weight] : summed) {
    table.records.push_back({key.first, key.second, weight});
  }
  return table;
}

MentionTable load_mentions(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  MentionTable table;
  std::string line;
  index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_fields(line, 3, path, line_no);
    const real sentiment = parse_real(fields[2], path, line_no);
    if (fields[0] == fields[1]) {
      ++table.self_mentions_dropped;
      continue;
    }
    table.events.push_back({fields[0], fields[1], sentiment});
  }
  return table;
}

std::map<std::string, std::string> load_labels(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::map<std::string, std::string> labels;
  std::string line;
  index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_fields(line, 2, path, line_no);
    const auto it = labels.find(fields[0]);
    if (it != labels.end() && it->second != fields[1]) {
      throw ConsistencyError(path + ":" + std::to_string(line_no) +
                             ": conflicting labels for user " + fields[0]);
    }
    labels[fields[0]] = fields[1];
  }
  return labels;
}

TruthRelations load_truth_relations(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  TruthRelations truth;
  std::string line;
  index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (skippable(line)) continue;
    const auto fields = split_fields(line, 3, path, line_no);
    Relation rel;
    if (fields[2] == "antagonism") {
      rel = Relation::Antagonism;
    } else if (fields[2] == "alliance") {
      rel = Relation::Alliance;
    } else if (fields[2] == "none") {
      rel = Relation::None;
    } else {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": unknown relation '" + fields[2] +
                       "' (expected antagonism, alliance, or none)");
    }
    insert_truth_relation(truth, fields[0], fields[1], rel);
  }
  return truth;
}

LabeledDataset build_dataset(
    const InteractionTable& interactions, const MentionTable& mentions,
    const std::optional<std::map<std::string, std::string>>& labels,
    const std::optional<TruthRelations>& truth, const BuildOptions& options) {
  LabeledDataset out;

  // The user universe covers everyone seen anywhere; only users with at
  // least one (non-self) interaction survive.
  std::set<std::string> universe;
  std::set<std::string> interacting;
  for (const auto& rec : interactions.records) {
    universe.insert(rec.src);
    universe.insert(rec.dst);
    if (rec.src == rec.dst) {
      ++out.self_interactions_dropped;
      continue;
    }
    interacting.insert(rec.src);
    interacting.insert(rec.dst);
  }
  for (const auto& ev : mentions.events) {
    universe.insert(ev.author);
    universe.insert(ev.target);
  }

  if (interacting.empty()) {
    throw ConsistencyError(
        "build_dataset: no users remain after removing interaction-isolated "
        "users");
  }

  out.users.assign(interacting.begin(), interacting.end());
  for (std::size_t i = 0; i < out.users.size(); ++i) {
    out.user_index.emplace(out.users[i], static_cast<index>(i));
  }
  out.users_removed =
      static_cast<index>(universe.size()) - static_cast<index>(out.users.size());

  const index n = static_cast<index>(out.users.size());
  std::vector<Triplet> r_trips;
  for (const auto& rec : interactions.records) {
    if (rec.src == rec.dst) continue;
    const index i = out.user_index.at(rec.src);
    const index j = out.user_index.at(rec.dst);
    r_trips.push_back({i, j, rec.weight});
    r_trips.push_back({j, i, rec.weight});
  }
  out.R = SparseMatrix::from_triplets(n, n, std::move(r_trips));

  std::vector<Triplet> s_trips;
  for (const auto& ev : mentions.events) {
    const auto author = out.user_index.find(ev.author);
    const auto target = out.user_index.find(ev.target);
    if (author == out.user_index.end() || target == out.user_index.end()) {
      ++out.events_dropped;
      continue;
    }
    if (ev.sentiment < 0.0 &&
        out.R.at(author->second, target->second) != 0.0) {
      ++out.events_suppressed;
      continue;
    }
    s_trips.push_back({author->second, target->second, ev.sentiment});
  }
  if (options.symmetrize_attitudes) {
    const std::size_t directed = s_trips.size();
    for (std::size_t p = 0; p < directed; ++p) {
      s_trips.push_back({s_trips[p].col, s_trips[p].row, s_trips[p].value});
    }
  }
  out.S = SparseMatrix::from_triplets(n, n, std::move(s_trips));

  if (labels) {
    std::vector<std::string> aligned(static_cast<std::size_t>(n),
                                     "(unlabeled)");
    for (const auto& [user, label] : *labels) {
      const auto it = out.user_index.find(user);
      if (it == out.user_index.end()) {
        ++out.unknown_label_users;
        continue;
      }
      aligned[static_cast<std::size_t>(it->second)] = label;
    }
    out.labels = std::move(aligned);
  }
  if (truth) {
    out.truth_relations = *truth;
  }
  return out;
}

}  // namespace daac
