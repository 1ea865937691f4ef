// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/simulator.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "chkpt/error.hpp"

namespace chkpt {

std::string_view to_string(CheckpointContent content) {
  switch (content) {
    case CheckpointContent::forward_restart: return "forward_restart";
    case CheckpointContent::nonlinear_dependency: return "nonlinear_dependency";
    case CheckpointContent::combined: return "combined";
  }
  return "?";
}

std::int64_t CheckpointRecord::units() const {
  return (ics_range ? 1 : 0) + static_cast<std::int64_t>(data_steps.size());
}

std::int64_t StorageState::units_in(StorageKind kind) const {
  std::int64_t total = 0;
  for (const auto& [key, record] : checkpoints) {
    if (key.second == kind) total += record.units();
  }
  return total;
}

namespace {

std::string step_text(StepIndex n) { return std::to_string(n); }

std::string key_text(const CheckpointKey& key) {
  return "(" + std::to_string(key.first) + ", " + std::string(to_string(key.second)) + ")";
}

}  // namespace

Simulator::Simulator(StepIndex max_n, ReplayOptions options) : options_(std::move(options)) {
  if (max_n < 1) throw InvalidConfig("max_n must be positive, got " + std::to_string(max_n));
  state_.max_n = max_n;
  state_.adjoint_pos = max_n;
}

void Simulator::violate(const char* rule, std::string message) {
  result_.violations.push_back({index_, rule, std::move(message)});
}

void Simulator::note_intermediate() {
  auto& peak = result_.report.peak_intermediate_data_steps;
  peak = std::max(peak, static_cast<std::int64_t>(state_.buffered_data.size()));
}

void Simulator::apply(const Action& a) {
  forward_note_ = "-";
  adjoint_note_ = "-";
  ++result_.report.action_counts[std::string(action_name(a))];

  if (state_.terminated) {
    violate(rules::kEndState, "action after EndReverse(True)");
  }
  if (auto problem = check_action(a)) {
    violate(rules::kMalformedAction, *problem);
  } else {
    std::visit([this](const auto& x) { on(x); }, a);
  }
  last_was_end_reverse_ = std::holds_alternative<action::EndReverse>(a);
  result_.annotations.emplace_back(forward_note_, adjoint_note_);
  ++index_;
}

void Simulator::on(const action::Clear& a) {
  if (a.clear_ics) state_.buffered_ics.reset();
  if (a.clear_data) state_.buffered_data.clear();
}

void Simulator::on(const action::Configure& a) {
  state_.store_ics = a.store_ics;
  state_.store_data = a.store_data;
}

void Simulator::on(const action::Forward& a) {
  if (!state_.forward_pos) {
    violate(rules::kForwardPosMismatch,
            "forward cannot restart: last load carried no restart data; Forward starts at " +
                step_text(a.from));
  } else if (*state_.forward_pos != a.from) {
    violate(rules::kForwardPosMismatch, "forward is at " + step_text(*state_.forward_pos) +
                                            ", Forward starts at " + step_text(a.from));
  }
  if (a.from >= state_.max_n) {
    violate(rules::kForwardPastEnd, "Forward starts at " + step_text(a.from) + " but the model has " +
                                        step_text(state_.max_n) + " steps");
    return;
  }
  // Bounds beyond the end (including the unbounded sentinel) stop at max_n.
  const StepIndex end = std::min(a.to, state_.max_n);
  const StepIndex steps = end - a.from;
  result_.report.total_forward_steps += steps;
  if (!state_.forward_ended) result_.report.forward_steps_original += steps;

  if (state_.store_ics) {
    if (state_.buffered_ics && state_.buffered_ics->to == a.from) {
      state_.buffered_ics->to = end;
    } else if (!state_.buffered_ics) {
      state_.buffered_ics = StepRange{a.from, end};
    }
  }
  if (state_.store_data) {
    for (StepIndex k = a.from; k < end; ++k) state_.buffered_data.insert(state_.buffered_data.end(), k);
    note_intermediate();
  }
  state_.forward_pos = end;
  forward_note_ = step_text(a.from) + " -> " + step_text(end);
}

void Simulator::on(const action::Write& a) {
  const bool has_ics = state_.buffered_ics.has_value();
  const bool has_data = !state_.buffered_data.empty();
  if (!has_ics && !has_data) {
    violate(rules::kWriteEmpty, "Write(" + step_text(a.step) + ") with empty intermediate storage");
    return;
  }
  const StepIndex expected = has_ics ? state_.buffered_ics->from : *state_.buffered_data.begin();
  if (a.step != expected) {
    violate(rules::kWriteStepMismatch, "intermediate storage starts at step " + step_text(expected) +
                                           ", Write targets step " + step_text(a.step));
  }

  const CheckpointKey key{a.step, a.storage};
  if (state_.checkpoints.count(key) != 0) {
    violate(rules::kCheckpointExists, "checkpoint " + key_text(key) + " already exists");
  }
  CheckpointRecord record;
  record.ics_range = state_.buffered_ics;
  record.data_steps = state_.buffered_data;
  record.content = has_ics && has_data ? CheckpointContent::combined
                   : has_ics           ? CheckpointContent::forward_restart
                                       : CheckpointContent::nonlinear_dependency;
  state_.checkpoints[key] = std::move(record);
  state_.deleted.erase(key);

  const std::int64_t units = state_.units_in(a.storage);
  auto& peak = result_.report.peak_units[a.storage];
  peak = std::max(peak, units);
  if (const auto it = options_.unit_limits.find(a.storage);
      it != options_.unit_limits.end() && units > it->second) {
    violate(rules::kUnitLimit, std::to_string(units) + " " + std::string(to_string(a.storage)) +
                                   " units in use, limit " + std::to_string(it->second));
  }
  if (options_.check_exclusion) {
    if (auto v = check_exclusion(state_, index_)) result_.violations.push_back(std::move(*v));
  }
}

void Simulator::on(const action::Read& a) {
  const CheckpointKey key{a.step, a.storage};
  const auto it = state_.checkpoints.find(key);
  if (it == state_.checkpoints.end()) {
    if (state_.deleted.count(key) != 0) {
      violate(rules::kReadAfterDelete, "checkpoint " + key_text(key) + " was deleted");
    } else {
      violate(rules::kReadMissing, "no checkpoint " + key_text(key));
    }
    state_.forward_pos.reset();
    forward_note_ = "-> *";
    return;
  }
  const CheckpointRecord& record = it->second;
  if (record.ics_range) {
    state_.buffered_ics = record.ics_range;
    state_.forward_pos = a.step;
    forward_note_ = "-> " + step_text(a.step);
  } else {
    state_.forward_pos.reset();
    forward_note_ = "-> *";
  }
  state_.buffered_data.insert(record.data_steps.begin(), record.data_steps.end());
  note_intermediate();
  if (a.delete_after) {
    state_.checkpoints.erase(it);
    state_.deleted.insert(key);
  }
}

void Simulator::on(const action::Reverse& a) {
  if (!state_.forward_ended) {
    violate(rules::kReverseBeforeEndForward, "Reverse before EndForward");
  }
  if (state_.adjoint_pos != a.from) {
    violate(rules::kReverseOrder, "adjoint is at " + step_text(state_.adjoint_pos) +
                                      ", Reverse starts at " + step_text(a.from));
  }
  std::vector<StepIndex> missing;
  for (StepIndex k = a.from - 1; k >= a.to; --k) {
    if (state_.buffered_data.count(k) == 0) missing.push_back(k);
  }
  if (!missing.empty()) {
    std::string steps;
    for (const auto k : missing) steps += (steps.empty() ? "" : ", ") + step_text(k);
    violate(rules::kReverseMissingData,
            "no dependency data in intermediate storage for step(s) " + steps);
  }
  state_.adjoint_pos = a.to;
  adjoint_note_ = step_text(a.from) + " -> " + step_text(a.to);
}

void Simulator::on(const action::EndForward&) {
  if (state_.forward_ended) {
    violate(rules::kEndState, "duplicate EndForward");
  } else if (state_.forward_pos != state_.max_n) {
    violate(rules::kEndState, "EndForward with the forward at " +
                                  (state_.forward_pos ? step_text(*state_.forward_pos) : "*") +
                                  ", expected " + step_text(state_.max_n));
  }
  state_.forward_ended = true;
}

void Simulator::on(const action::EndReverse& a) {
  if (state_.adjoint_pos != 0) {
    violate(rules::kEndState,
            "EndReverse with the adjoint at " + step_text(state_.adjoint_pos) + ", expected 0");
  }
  ++state_.reverse_passes;
  if (a.exhausted) {
    state_.terminated = true;
  } else {
    state_.adjoint_pos = state_.max_n;  // ready for another pass
  }
}

void Simulator::finish() {
  if (!state_.forward_ended) violate(rules::kEndState, "schedule has no EndForward");
  if (!last_was_end_reverse_) violate(rules::kEndState, "schedule does not end with EndReverse");
}

ReplayResult Simulator::take_result() && {
  result_.final_state = std::move(state_);
  return std::move(result_);
}

ReplayResult replay(std::span<const Action> actions, StepIndex max_n, const ReplayOptions& options) {
  Simulator sim(max_n, options);
  for (const auto& a : actions) sim.apply(a);
  sim.finish();
  return std::move(sim).take_result();
}

std::optional<Violation> check_exclusion(const StorageState& state, std::size_t index) {
  for (const auto& [restart_key, restart] : state.checkpoints) {
    if (!restart.ics_range) continue;
    const StepIndex m = restart.ics_range->from;
    for (const auto& [data_key, data] : state.checkpoints) {
      if (data_key == restart_key) continue;
      if (data.data_steps.count(m) != 0) {
        return Violation{index, rules::kExclusionSameStep,
                         "step " + std::to_string(m) + " has restart checkpoint " +
                             key_text(restart_key) + " and dependency checkpoint " +
                             key_text(data_key)};
      }
    }
  }
  return std::nullopt;
}

std::string render_table(const ScheduleTrace& trace) {
  const auto actions = trace.actions();
  const ReplayResult replayed = replay(actions, trace.max_n);

  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"index", "action(parameters)", "forward state", "adjoint state"});
  std::size_t i = 0;
  for (const auto& entry : trace.entries) {
    if (const auto* a = std::get_if<Action>(&entry)) {
      const auto& [fwd, adj] = replayed.annotations[i];
      rows.push_back({std::to_string(i), to_string(*a), fwd, adj});
      ++i;
    } else {
      rows.push_back({"-", to_string(std::get<FeedbackEvent>(entry)), "-", "-"});
    }
  }

  std::array<std::size_t, 4> width{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  }
  const auto line = [&](const std::array<std::string, 4>& row) {
    std::string out;
    for (std::size_t c = 0; c < 4; ++c) {
      out += row[c];
      if (c + 1 < 4) out += std::string(width[c] - row[c].size(), ' ') + " | ";
    }
    return out + '\n';
  };

  std::string out = line(rows.front());
  for (std::size_t c = 0; c < 4; ++c) {
    out += std::string(width[c], '-');
    out += c + 1 < 4 ? "-+-" : "\n";
  }
  for (std::size_t r = 1; r < rows.size(); ++r) out += line(rows[r]);
  return out;
}

std::string report_to_text(const CostReport& report) {
  std::string out;
  out += "total_forward_steps " + std::to_string(report.total_forward_steps) + '\n';
  out += "forward_steps_original " + std::to_string(report.forward_steps_original) + '\n';
  for (const auto& [kind, units] : report.peak_units) {
    out += "peak_units." + std::string(to_string(kind)) + ' ' + std::to_string(units) + '\n';
  }
  out += "peak_intermediate_data_steps " + std::to_string(report.peak_intermediate_data_steps) + '\n';
  for (const auto& [name, count] : report.action_counts) {
    out += "count." + name + ' ' + std::to_string(count) + '\n';
  }
  return out;
}

std::string violations_to_text(std::span<const Violation> violations) {
  std::string out;
  for (const auto& v : violations) {
    out += std::to_string(v.index) + ' ' + v.rule + ' ' + v.message + '\n';
  }
  return out;
}

std::string result_to_json(const ReplayResult& result) {
  using nlohmann::ordered_json;
  ordered_json peak = ordered_json::object();
  for (const auto& [kind, units] : result.report.peak_units) peak[std::string(to_string(kind))] = units;
  ordered_json counts = ordered_json::object();
  for (const auto& [name, count] : result.report.action_counts) counts[name] = count;
  ordered_json violations = ordered_json::array();
  for (const auto& v : result.violations) {
    violations.push_back({{"index", v.index}, {"rule", v.rule}, {"message", v.message}});
  }
  ordered_json doc = {
      {"ok", result.ok()},
      {"report",
       {{"total_forward_steps", result.report.total_forward_steps},
        {"forward_steps_original", result.report.forward_steps_original},
        {"peak_units", peak},
        {"peak_intermediate_data_steps", result.report.peak_intermediate_data_steps},
        {"action_counts", counts}}},
      {"violations", violations},
  };
  return doc.dump(2) + '\n';
}

}  // namespace chkpt
