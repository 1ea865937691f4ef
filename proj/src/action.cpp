// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "chkpt/action.hpp"

#include <sstream>
#include <type_traits>

namespace chkpt {
namespace {

const char* py_bool(bool value) { return value ? "True" : "False"; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(StorageKind kind) {
  switch (kind) {
    case StorageKind::ram:
      return "ram";
    case StorageKind::disk:
      return "disk";
  }
  return "?";
}

std::optional<StorageKind> storage_kind_from_string(std::string_view text) {
  if (text == "ram") return StorageKind::ram;
  if (text == "disk") return StorageKind::disk;
  return std::nullopt;
}

std::string_view action_name(const Action& a) {
  return std::visit(
      overloaded{
          [](const action::Clear&) { return std::string_view("Clear"); },
          [](const action::Configure&) { return std::string_view("Configure"); },
          [](const action::Write&) { return std::string_view("Write"); },
          [](const action::Forward&) { return std::string_view("Forward"); },
          [](const action::Read&) { return std::string_view("Read"); },
          [](const action::Reverse&) { return std::string_view("Reverse"); },
          [](const action::EndForward&) { return std::string_view("EndForward"); },
          [](const action::EndReverse&) { return std::string_view("EndReverse"); },
      },
      a);
}

std::string to_string(const Action& a) {
  std::ostringstream out;
  out << action_name(a) << '(';
  std::visit(overloaded{
                 [&](const action::Clear& c) {
                   out << py_bool(c.clear_ics) << ", " << py_bool(c.clear_data);
                 },
                 [&](const action::Configure& c) {
                   out << py_bool(c.store_ics) << ", " << py_bool(c.store_data);
                 },
                 [&](const action::Write& w) { out << w.step << ", " << to_string(w.storage); },
                 [&](const action::Forward& f) { out << f.from << ", " << f.to; },
                 [&](const action::Read& r) {
                   out << r.step << ", " << to_string(r.storage) << ", "
                       << py_bool(r.delete_after);
                 },
                 [&](const action::Reverse& r) { out << r.from << ", " << r.to; },
                 [&](const action::EndForward&) {},
                 [&](const action::EndReverse& e) { out << py_bool(e.exhausted); },
             },
             a);
  out << ')';
  return out.str();
}

std::optional<std::string> check_action(const Action& a) {
  return std::visit(
      overloaded{
          [](const action::Write& w) -> std::optional<std::string> {
            if (w.step < 0) return "negative step index";
            return std::nullopt;
          },
          [](const action::Read& r) -> std::optional<std::string> {
            if (r.step < 0) return "negative step index";
            return std::nullopt;
          },
          [](const action::Forward& f) -> std::optional<std::string> {
            if (f.from < 0) return "negative step index";
            if (!(f.from < f.to)) return "Forward requires n0 < n1";
            return std::nullopt;
          },
          [](const action::Reverse& r) -> std::optional<std::string> {
            if (r.to < 0) return "negative step index";
            if (!(r.to < r.from)) return "Reverse requires n0 < n1";
            return std::nullopt;
          },
          [](const auto&) -> std::optional<std::string> { return std::nullopt; },
      },
      a);
}

std::string_view to_string(FeedbackKind kind) {
  return kind == FeedbackKind::initialize ? "Initialize" : "Finalize";
}

std::string to_string(const FeedbackEvent& event) {
  return std::string(to_string(event.kind)) + "(" + std::to_string(event.max_n) + ")";
}

}  // namespace chkpt
