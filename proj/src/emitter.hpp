// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "chkpt/action.hpp"

namespace chkpt::detail {

/// Appends actions for an offline schedule. Inserts EndForward right after
/// the first Forward that reaches max_n.
class Emitter {
 public:
  Emitter(StepIndex max_n, StorageKind storage) : max_n_(max_n), storage_(storage) {}

  void configure(bool ics, bool data) { out_.push_back(action::Configure{ics, data}); }
  void clear() { out_.push_back(action::Clear{true, true}); }
  void write(StepIndex n) { out_.push_back(action::Write{n, storage_}); }
  void read(StepIndex n, bool delete_after) {
    out_.push_back(action::Read{n, storage_, delete_after});
  }
  void reverse(StepIndex from, StepIndex to) { out_.push_back(action::Reverse{from, to}); }

  void forward(StepIndex from, StepIndex to) {
    out_.push_back(action::Forward{from, to});
    if (!forward_ended_ && to >= max_n_) {
      out_.push_back(action::EndForward{});
      forward_ended_ = true;
    }
  }

  /// Advance one step with non-linear dependency data kept in intermediate
  /// storage, then advance the adjoint over it.
  void step_and_reverse(StepIndex n0) {
    configure(false, true);
    forward(n0, n0 + 1);
    reverse(n0 + 1, n0);
    clear();
  }

  std::vector<Action> finish(bool exhausted) {
    out_.push_back(action::EndReverse{exhausted});
    return std::move(out_);
  }

 private:
  StepIndex max_n_;
  StorageKind storage_;
  bool forward_ended_ = false;
  std::vector<Action> out_;
};

}  // namespace chkpt::detail
