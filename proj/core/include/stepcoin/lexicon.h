// Copyright 2026 The stepcoin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPCOIN_LEXICON_H_
#define STEPCOIN_LEXICON_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stepcoin {

struct Domain {
  int id = 0;
  std::string name;
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Task {
  int id = 0;
  int domain_id = 0;
  std::string name;
  friend bool operator==(const Task&, const Task&) = default;
};

struct Step {
  int id = 0;
  int task_id = 0;
  std::string phrase;
  friend bool operator==(const Step&, const Step&) = default;
};

// Three-level taxonomy domain -> task -> step. Immutable once built.
//
// Task ids are dense 0..M-1 and step ids dense 0..K-1; entries are stored
// indexed by id regardless of the order they were supplied in. Every step
// belongs to exactly one task and every task has at least one step.
class Lexicon {
 public:
  // Validates and indexes the taxonomy. Throws Error(kValidationError)
  // naming the first violated invariant.
  static Lexicon Create(std::string version, std::vector<Domain> domains,
                        std::vector<Task> tasks, std::vector<Step> steps);

  const std::string& version() const { return version_; }
  const std::vector<Domain>& domains() const { return domains_; }
  const std::vector<Task>& tasks() const { return tasks_; }
  const std::vector<Step>& steps() const { return steps_; }

  // K and M.
  int num_steps() const { return static_cast<int>(steps_.size()); }
  int num_tasks() const { return static_cast<int>(tasks_.size()); }

  const Step& step(int step_id) const { return steps_[step_id]; }
  const Task& task(int task_id) const { return tasks_[task_id]; }
  int TaskOfStep(int step_id) const { return steps_[step_id].task_id; }
  int DomainOfTask(int task_id) const { return tasks_[task_id].domain_id; }
  bool HasStep(int step_id) const {
    return step_id >= 0 && step_id < num_steps();
  }

  // Ascending step ids of one task. Throws Error(kUnknownTask).
  std::span<const int> StepsOfTask(int task_id) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.version_ == b.version_ && a.domains_ == b.domains_ &&
           a.tasks_ == b.tasks_ && a.steps_ == b.steps_;
  }

 private:
  Lexicon() = default;

  std::string version_;
  std::vector<Domain> domains_;  // sorted by id
  std::vector<Task> tasks_;      // tasks_[j].id == j
  std::vector<Step> steps_;      // steps_[i].id == i
  std::vector<std::vector<int>> steps_by_task_;
};

std::vector<int> StepsOfTask(const Lexicon& lexicon, int task_id);

// JSON lexicon file: {"version", "domains", "tasks", "steps"}.
// Throws kParseError on malformed text and kValidationError on invariant
// violations.
Lexicon LoadLexicon(std::string_view json_text);
Lexicon LoadLexiconFile(const std::filesystem::path& path);
std::string SerializeLexicon(const Lexicon& lexicon);

// Binary K x M step-task incidence matrix; entry (i, j) is 1 iff step i
// belongs to task j.
class StepTaskMatrix {
 public:
  StepTaskMatrix(int num_steps, int num_tasks);

  int num_steps() const { return num_steps_; }
  int num_tasks() const { return num_tasks_; }

  std::uint8_t at(int step, int task) const {
    return entries_[static_cast<size_t>(step) * num_tasks_ + task];
  }
  void set(int step, int task, std::uint8_t value) {
    entries_[static_cast<size_t>(step) * num_tasks_ + task] = value;
  }

  // Row-major K*M entries.
  std::span<const std::uint8_t> entries() const { return entries_; }

  // The K-dimensional indicator of the steps of one task.
  std::vector<std::uint8_t> Column(int task) const;
  int RowSum(int step) const;
  int ColumnSum(int task) const;

  friend bool operator==(const StepTaskMatrix&,
                         const StepTaskMatrix&) = default;

 private:
  int num_steps_;
  int num_tasks_;
  std::vector<std::uint8_t> entries_;
};

StepTaskMatrix BuildIncidenceMatrix(const Lexicon& lexicon);

}  // namespace stepcoin

#endif  // STEPCOIN_LEXICON_H_
