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

#include "stepcoin/lexicon.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "json_util.h"
#include "stepcoin/error.h"

namespace stepcoin {

using internal::Json;

namespace {

[[noreturn]] void Invalid(const std::string& message) {
  Throw(ErrorCode::kValidationError, message);
}

// Sorts entries by id and checks ids are exactly 0..n-1.
template <typename T>
void SortDense(std::vector<T>& items, const char* kind) {
  std::sort(items.begin(), items.end(),
            [](const T& a, const T& b) { return a.id < b.id; });
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0 && items[i].id == items[i - 1].id) {
      Invalid(std::string("duplicate ") + kind + " id " +
              std::to_string(items[i].id));
    }
    if (items[i].id != static_cast<int>(i)) {
      Invalid(std::string(kind) + " ids must be dense 0.." +
              std::to_string(items.size() - 1) + ", found id " +
              std::to_string(items[i].id));
    }
  }
}

}  // namespace

Lexicon Lexicon::Create(std::string version, std::vector<Domain> domains,
                        std::vector<Task> tasks, std::vector<Step> steps) {
  std::sort(domains.begin(), domains.end(),
            [](const Domain& a, const Domain& b) { return a.id < b.id; });
  for (size_t i = 0; i < domains.size(); ++i) {
    if (i > 0 && domains[i].id == domains[i - 1].id) {
      Invalid("duplicate domain id " + std::to_string(domains[i].id));
    }
    if (domains[i].name.empty()) {
      Invalid("domain " + std::to_string(domains[i].id) + " has an empty name");
    }
  }
  SortDense(tasks, "task");
  SortDense(steps, "step");

  auto domain_exists = [&](int id) {
    return std::ranges::binary_search(domains, id, {}, &Domain::id);
  };
  for (const Task& t : tasks) {
    if (!domain_exists(t.domain_id)) {
      Invalid("task " + std::to_string(t.id) + ": unresolvable domain_id " +
              std::to_string(t.domain_id));
    }
  }

  std::vector<std::vector<int>> by_task(tasks.size());
  std::vector<std::set<std::string>> phrases(tasks.size());
  for (const Step& s : steps) {
    if (s.task_id < 0 || s.task_id >= static_cast<int>(tasks.size())) {
      Invalid("step " + std::to_string(s.id) + ": unresolvable task_id " +
              std::to_string(s.task_id));
    }
    if (s.phrase.empty()) {
      Invalid("step " + std::to_string(s.id) + " has an empty phrase");
    }
    if (!phrases[s.task_id].insert(s.phrase).second) {
      Invalid("task " + std::to_string(s.task_id) +
              " has duplicate step phrase \"" + s.phrase + "\"");
    }
    by_task[s.task_id].push_back(s.id);
  }
  for (size_t j = 0; j < by_task.size(); ++j) {
    if (by_task[j].empty()) {
      Invalid("task " + std::to_string(j) + " has no steps");
    }
  }

  Lexicon lexicon;
  lexicon.version_ = std::move(version);
  lexicon.domains_ = std::move(domains);
  lexicon.tasks_ = std::move(tasks);
  lexicon.steps_ = std::move(steps);
  lexicon.steps_by_task_ = std::move(by_task);
  return lexicon;
}

std::span<const int> Lexicon::StepsOfTask(int task_id) const {
  if (task_id < 0 || task_id >= num_tasks()) {
    Throw(ErrorCode::kUnknownTask, "unknown task id " + std::to_string(task_id));
  }
  return steps_by_task_[task_id];
}

std::vector<int> StepsOfTask(const Lexicon& lexicon, int task_id) {
  auto span = lexicon.StepsOfTask(task_id);
  return {span.begin(), span.end()};
}

Lexicon LoadLexicon(std::string_view json_text) {
  const Json root = internal::ParseJson(json_text, "lexicon");
  if (!root.is_object()) Throw(ErrorCode::kParseError, "lexicon: expected object");

  auto array = [&](const char* key) -> const Json& {
    const Json& v = internal::Member(root, key, "lexicon");
    if (!v.is_array()) {
      Throw(ErrorCode::kParseError,
            std::string("lexicon: field \"") + key + "\" must be an array");
    }
    return v;
  };

  std::string version;
  if (auto it = root.find("version"); it != root.end()) {
    if (!it->is_string()) {
      Throw(ErrorCode::kParseError, "lexicon: \"version\" must be a string");
    }
    version = it->get<std::string>();
  } else {
    Throw(ErrorCode::kParseError, "lexicon: field \"version\" is missing");
  }

  std::vector<Domain> domains;
  for (const Json& d : array("domains")) {
    domains.push_back({internal::GetInt(d, "id", "domain"),
                       internal::GetString(d, "name", "domain")});
  }
  std::vector<Task> tasks;
  for (const Json& t : array("tasks")) {
    tasks.push_back({internal::GetInt(t, "id", "task"),
                     internal::GetInt(t, "domain_id", "task"),
                     internal::GetString(t, "name", "task")});
  }
  std::vector<Step> steps;
  for (const Json& s : array("steps")) {
    steps.push_back({internal::GetInt(s, "id", "step"),
                     internal::GetInt(s, "task_id", "step"),
                     internal::GetString(s, "phrase", "step")});
  }
  return Lexicon::Create(std::move(version), std::move(domains),
                         std::move(tasks), std::move(steps));
}

Lexicon LoadLexiconFile(const std::filesystem::path& path) {
  return LoadLexicon(ReadFile(path));
}

std::string SerializeLexicon(const Lexicon& lexicon) {
  Json domains = Json::array();
  for (const Domain& d : lexicon.domains()) {
    domains.push_back({{"id", d.id}, {"name", d.name}});
  }
  Json tasks = Json::array();
  for (const Task& t : lexicon.tasks()) {
    tasks.push_back({{"id", t.id}, {"domain_id", t.domain_id}, {"name", t.name}});
  }
  Json steps = Json::array();
  for (const Step& s : lexicon.steps()) {
    steps.push_back({{"id", s.id}, {"task_id", s.task_id}, {"phrase", s.phrase}});
  }
  Json root = {{"version", lexicon.version()},
               {"domains", std::move(domains)},
               {"tasks", std::move(tasks)},
               {"steps", std::move(steps)}};
  return internal::Dump(root);
}

StepTaskMatrix::StepTaskMatrix(int num_steps, int num_tasks)
    : num_steps_(num_steps),
      num_tasks_(num_tasks),
      entries_(static_cast<size_t>(num_steps) * num_tasks, 0) {}

std::vector<std::uint8_t> StepTaskMatrix::Column(int task) const {
  std::vector<std::uint8_t> column(num_steps_);
  for (int i = 0; i < num_steps_; ++i) column[i] = at(i, task);
  return column;
}

int StepTaskMatrix::RowSum(int step) const {
  int sum = 0;
  for (int j = 0; j < num_tasks_; ++j) sum += at(step, j);
  return sum;
}

int StepTaskMatrix::ColumnSum(int task) const {
  int sum = 0;
  for (int i = 0; i < num_steps_; ++i) sum += at(i, task);
  return sum;
}

StepTaskMatrix BuildIncidenceMatrix(const Lexicon& lexicon) {
  StepTaskMatrix w(lexicon.num_steps(), lexicon.num_tasks());
  for (const Step& s : lexicon.steps()) w.set(s.id, s.task_id, 1);
  return w;
}

}  // namespace stepcoin
