// Copyright 2026 The m2fol Authors
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

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace m2fol {

// Exit codes shared by every subcommand.
struct ExitStatus {
  static constexpr int Ok = 0;           // success / conforms
  static constexpr int CheckFailed = 1;  // nonconformance or failed check
  static constexpr int Usage = 2;        // usage or parse error
  static constexpr int Internal = 3;     // internal invariant breach
};

struct OutputOptions {
  bool json = false;
  bool verbose = false;
};

int cmd_check(const std::string& langPath, const std::string& modelPath, const OutputOptions& opts,
              std::ostream& out, std::ostream& err);

int cmd_derive(const std::string& metamodelPath, const std::string& constraintsPath,
               const std::map<std::string, std::string>& renames, const std::string& outPath,
               const OutputOptions& opts, std::ostream& out, std::ostream& err);

int cmd_fuse(const std::string& aPath, const std::string& bPath, const std::string& bindPath,
             const std::string& outPath, const OutputOptions& opts, std::ostream& out, std::ostream& err);

int cmd_restrict(const std::string& langPath, const std::vector<std::string>& keepTypes, bool reclose,
                 const std::string& outPath, const OutputOptions& opts, std::ostream& out, std::ostream& err);

int cmd_event(const std::string& langPath, const std::string& modelPath, const std::string& eventName,
              const std::vector<std::string>& args, const std::string& outPath, const OutputOptions& opts,
              std::ostream& out, std::ostream& err);

int cmd_bootstrap(const OutputOptions& opts, std::ostream& out, std::ostream& err);

// Full argv-level entry point (CLI11 inside).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace m2fol
