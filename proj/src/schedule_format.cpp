// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/schedule_format.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>

#include "chkpt/error.hpp"

namespace chkpt {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_args(std::string_view args) {
  std::vector<std::string_view> out;
  if (trim(args).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = args.find(',', start);
    out.push_back(trim(args.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class ArgReader {
 public:
  ArgReader(std::string_view name, std::vector<std::string_view> args, std::size_t line)
      : name_(name), args_(std::move(args)), line_(line) {}

  void expect_count(std::size_t n) const {
    if (args_.size() != n) {
      fail("expected " + std::to_string(n) + " argument(s), got " +
           std::to_string(args_.size()));
    }
  }

  StepIndex step(std::size_t i) const {
    const auto text = args_[i];
    StepIndex value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
      fail("invalid step index '" + std::string(text) + "'");
    }
    if (value < 0) fail("negative step index " + std::string(text));
    return value;
  }

  bool boolean(std::size_t i) const {
    if (args_[i] == "True") return true;
    if (args_[i] == "False") return false;
    fail("invalid boolean '" + std::string(args_[i]) + "'");
  }

  StorageKind storage(std::size_t i) const {
    // Tolerate the quoted form used in prose, e.g. 'RAM'.
    auto text = args_[i];
    if (text.size() >= 2 && (text.front() == '\'' || text.front() == '"') &&
        text.back() == text.front()) {
      text = text.substr(1, text.size() - 2);
    }
    std::string lowered(text);
    for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (auto kind = storage_kind_from_string(lowered)) return *kind;
    fail("unknown storage '" + std::string(args_[i]) + "'");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, std::string(name_) + ": " + message);
  }

 private:
  std::string_view name_;
  std::vector<std::string_view> args_;
  std::size_t line_;
};

}  // namespace

std::string serialize_schedule(std::span<const Action> actions) {
  std::string out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    out += std::to_string(i);
    out += ' ';
    out += to_string(actions[i]);
    out += '\n';
  }
  return out;
}

Action parse_action(std::string_view text, std::size_t line) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ParseError(line, "expected Name(args), got '" + std::string(text) + "'");
  }
  const auto name = trim(text.substr(0, open));
  const ArgReader r(name, split_args(text.substr(open + 1, text.size() - open - 2)), line);

  Action result;
  if (name == "Clear") {
    r.expect_count(2);
    result = action::Clear{r.boolean(0), r.boolean(1)};
  } else if (name == "Configure") {
    r.expect_count(2);
    result = action::Configure{r.boolean(0), r.boolean(1)};
  } else if (name == "Write") {
    r.expect_count(2);
    result = action::Write{r.step(0), r.storage(1)};
  } else if (name == "Forward") {
    r.expect_count(2);
    result = action::Forward{r.step(0), r.step(1)};
  } else if (name == "Read") {
    r.expect_count(3);
    result = action::Read{r.step(0), r.storage(1), r.boolean(2)};
  } else if (name == "Reverse") {
    r.expect_count(2);
    result = action::Reverse{r.step(0), r.step(1)};
  } else if (name == "EndForward") {
    r.expect_count(0);
    result = action::EndForward{};
  } else if (name == "EndReverse") {
    r.expect_count(1);
    result = action::EndReverse{r.boolean(0)};
  } else {
    throw ParseError(line, "unknown action '" + std::string(name) + "'");
  }
  if (auto problem = check_action(result)) r.fail(*problem);
  return result;
}

std::vector<Action> parse_schedule(std::string_view text) {
  std::vector<Action> actions;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto line = trim(raw);
    if (line.empty()) continue;

    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw ParseError(line_no, "expected 'INDEX Action(args)'");
    }
    const auto index_text = line.substr(0, space);
    std::size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size()) {
      throw ParseError(line_no, "invalid record index '" + std::string(index_text) + "'");
    }
    if (index != actions.size()) {
      throw ParseError(line_no, "record index " + std::to_string(index) + " out of sequence (expected " +
                                    std::to_string(actions.size()) + ")");
    }
    actions.push_back(parse_action(line.substr(space + 1), line_no));
  }
  return actions;
}

}  // namespace chkpt
