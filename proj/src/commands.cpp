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

#include "m2fol/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "m2fol/compose.hpp"
#include "m2fol/eval.hpp"
#include "m2fol/events.hpp"
#include "m2fol/metalang.hpp"
#include "m2fol/parser.hpp"
#include "m2fol/printer.hpp"

namespace m2fol {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_output(const std::string& path, const std::string& content, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << content;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  file << content;
  return true;
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& err) {
  for (const auto& d : diags) err << d.to_string() << "\n";
}

std::optional<SignatureDecl> load_language(const std::string& path, std::ostream& err) {
  auto text = read_file(path, err);
  if (!text) return std::nullopt;
  auto parsed = parse_language(*text, path);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics, err);
    return std::nullopt;
  }
  return std::move(*parsed.value);
}

std::optional<Structure> load_model(const std::string& path, std::shared_ptr<const SignatureDecl> sig,
                                    std::ostream& err) {
  auto text = read_file(path, err);
  if (!text) return std::nullopt;
  auto parsed = parse_model(*text, std::move(sig), path);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics, err);
    return std::nullopt;
  }
  return std::move(*parsed.value);
}

std::string witness_text(const ConstraintResult& r) {
  std::string s;
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i > 0) s += ", ";
    s += r.witness[i].first + "=" + r.witness[i].second.to_string();
  }
  return s;
}

void print_report_text(const ConformanceReport& report, std::ostream& out) {
  if (report.structural.empty()) {
    out << "structural: ok\n";
  } else {
    out << "structural: " << report.structural.size() << " finding(s)\n";
    for (const auto& f : report.structural) out << "  " << f.to_string() << "\n";
  }
  for (const auto& r : report.constraints) {
    out << "constraint " << r.name << ": " << (r.holds ? "ok" : "FAIL");
    if (!r.holds && !r.witness.empty()) out << "  witness: " << witness_text(r);
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
  }
  out << report.held() << "/" << report.constraints.size() << " constraints hold\n";
}

void print_report_json(const std::string& language, const std::string& model, const ConformanceReport& report,
                       std::ostream& out) {
  ordered_json doc;
  doc["command"] = "check";
  doc["language"] = language;
  doc["model"] = model;
  doc["structural"] = ordered_json::array();
  for (const auto& f : report.structural) {
    ordered_json finding;
    finding["code"] = f.code;
    finding["subject"] = f.subject;
    finding["detail"] = f.detail;
    doc["structural"].push_back(finding);
  }
  doc["constraints"] = ordered_json::array();
  for (const auto& r : report.constraints) {
    ordered_json c;
    c["name"] = r.name;
    c["holds"] = r.holds;
    if (!r.witness.empty()) {
      ordered_json w;
      for (const auto& [var, value] : r.witness) w[var] = value.to_string();
      c["witness"] = w;
    }
    if (!r.note.empty()) c["note"] = r.note;
    doc["constraints"].push_back(c);
  }
  doc["held"] = report.held();
  doc["total"] = report.constraints.size();
  doc["conforms"] = report.conforms();
  out << doc.dump(2) << "\n";
}

std::map<std::string, std::string> parse_rename_list(const std::vector<std::string>& entries) {
  std::map<std::string, std::string> renames;
  for (const auto& e : entries) {
    std::stringstream ss(e);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto pos = item.find('=');
      if (pos == std::string::npos || pos == 0) {
        throw KernelError(ErrCode::Internal, "bad rename '" + item + "', expected old=new");
      }
      renames[item.substr(0, pos)] = item.substr(pos + 1);
    }
  }
  return renames;
}

}  // namespace

int cmd_check(const std::string& langPath, const std::string& modelPath, const OutputOptions& opts,
              std::ostream& out, std::ostream& err) {
  auto sig = load_language(langPath, err);
  if (!sig) return ExitStatus::Usage;
  auto sigPtr = std::make_shared<const SignatureDecl>(std::move(*sig));
  auto model = load_model(modelPath, sigPtr, err);
  if (!model) return ExitStatus::Usage;
  if (opts.verbose) {
    out << "language " << sigPtr->name << ": " << sigPtr->types.size() << " types, "
        << sigPtr->functions.size() + sigPtr->relations.size() << " symbols, " << sigPtr->constraints.size()
        << " constraints\n";
    out << "model " << model->name << ": " << model->elements.size() << " elements\n";
  }
  ConformanceReport report = check_conformance(*model);
  if (opts.json) {
    print_report_json(sigPtr->name, model->name, report, out);
  } else {
    print_report_text(report, out);
  }
  return report.conforms() ? ExitStatus::Ok : ExitStatus::CheckFailed;
}

int cmd_derive(const std::string& metamodelPath, const std::string& constraintsPath,
               const std::map<std::string, std::string>& renames, const std::string& outPath,
               const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  (void)opts;
  auto mm = load_model(metamodelPath, m2fol_signature_ptr(), err);
  if (!mm) return ExitStatus::Usage;
  SignatureDecl derived;
  try {
    derived = derive_signature(*mm, {});
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return ExitStatus::CheckFailed;
  }
  if (!renames.empty()) derived = rename_signature(derived, renames);
  if (!constraintsPath.empty()) {
    auto text = read_file(constraintsPath, err);
    if (!text) return ExitStatus::Usage;
    auto parsed = parse_constraints(*text, derived, constraintsPath);
    if (!parsed.ok()) {
      print_diagnostics(parsed.diagnostics, err);
      return ExitStatus::Usage;
    }
    for (const auto& c : *parsed.value) derived.add_constraint(c.name, c.formula);
  }
  ValidationReport validation = validate_signature(derived);
  if (!validation.ok()) {
    for (const auto& f : validation.findings) err << "internal: " << f.to_string() << "\n";
    return ExitStatus::Internal;
  }
  return write_output(outPath, serialize_language(derived), out, err) ? ExitStatus::Ok : ExitStatus::Usage;
}

int cmd_fuse(const std::string& aPath, const std::string& bPath, const std::string& bindPath,
             const std::string& outPath, const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  (void)opts;
  auto a = load_language(aPath, err);
  if (!a) return ExitStatus::Usage;
  auto b = load_language(bPath, err);
  if (!b) return ExitStatus::Usage;
  FusionBinding binding;
  if (!bindPath.empty()) {
    auto text = read_file(bindPath, err);
    if (!text) return ExitStatus::Usage;
    auto parsed = parse_bindings(*text, *a, *b, bindPath);
    if (!parsed.ok()) {
      print_diagnostics(parsed.diagnostics, err);
      return ExitStatus::Usage;
    }
    binding = std::move(*parsed.value);
  }
  SignatureDecl fused;
  try {
    fused = fuse_signatures(*a, *b, binding);
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return ExitStatus::CheckFailed;
  }
  ValidationReport validation = validate_signature(fused);
  if (!validation.ok()) {
    for (const auto& f : validation.findings) err << "error: " << f.to_string() << "\n";
    return ExitStatus::CheckFailed;
  }
  return write_output(outPath, serialize_language(fused), out, err) ? ExitStatus::Ok : ExitStatus::Usage;
}

int cmd_restrict(const std::string& langPath, const std::vector<std::string>& keepTypes, bool reclose,
                 const std::string& outPath, const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  (void)opts;
  auto sig = load_language(langPath, err);
  if (!sig) return ExitStatus::Usage;
  std::set<std::string> keep;
  for (const auto& entry : keepTypes) {
    std::stringstream ss(entry);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) keep.insert(item);
    }
  }
  SignatureDecl restricted;
  try {
    restricted = restrict_signature(*sig, keep, reclose);
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return ExitStatus::Usage;
  }
  return write_output(outPath, serialize_language(restricted), out, err) ? ExitStatus::Ok : ExitStatus::Usage;
}

int cmd_event(const std::string& langPath, const std::string& modelPath, const std::string& eventName,
              const std::vector<std::string>& args, const std::string& outPath, const OutputOptions& opts,
              std::ostream& out, std::ostream& err) {
  (void)opts;
  auto sig = load_language(langPath, err);
  if (!sig) return ExitStatus::Usage;
  auto sigPtr = std::make_shared<const SignatureDecl>(std::move(*sig));
  auto model = load_model(modelPath, sigPtr, err);
  if (!model) return ExitStatus::Usage;

  // DSL-declared events take precedence; `fire` falls back to the built-in
  // Petri firing rule.
  std::optional<DomainEvent> event;
  for (const auto& ev : sigPtr->events) {
    if (ev && ev->name == eventName) event = *ev;
  }
  if (!event && eventName == "fire") {
    try {
      event = make_fire_event(*sigPtr);
    } catch (const KernelError& e) {
      err << "error: " << e.what() << "\n";
      return ExitStatus::Usage;
    }
  }
  if (!event) {
    err << "error: no event '" << eventName << "' in language '" << sigPtr->name << "'\n";
    return ExitStatus::Usage;
  }

  std::map<std::string, std::string> named;
  for (const auto& a : args) {
    auto pos = a.find('=');
    if (pos == std::string::npos || pos == 0) {
      err << "error: bad event argument '" << a << "', expected name=value\n";
      return ExitStatus::Usage;
    }
    named[a.substr(0, pos)] = a.substr(pos + 1);
  }
  auto constants = constant_table(*sigPtr);
  std::vector<Value> values;
  for (const auto& [pname, ptype] : event->params) {
    auto it = named.find(pname);
    if (it == named.end()) {
      err << "error: missing event argument '" << pname << "'\n";
      return ExitStatus::Usage;
    }
    const std::string& raw = it->second;
    if (!raw.empty() && raw.find_first_not_of("0123456789") == std::string::npos) {
      values.push_back(Value::nat(std::stoull(raw)));
    } else if (model->elements.count(raw)) {
      values.push_back(Value::element(raw));
    } else if (constants.count(raw)) {
      values.push_back(Value::enum_const(raw));
    } else {
      err << "error: argument '" << pname << "=" << raw << "' names no element or constant\n";
      return ExitStatus::Usage;
    }
  }

  Structure result;
  try {
    result = apply_domain(*model, *event, values);
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return ExitStatus::CheckFailed;
  }
  return write_output(outPath, serialize_model(result), out, err) ? ExitStatus::Ok : ExitStatus::Usage;
}

int cmd_bootstrap(const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  (void)err;
  ConformanceReport report = bootstrap_check();
  if (opts.json) {
    print_report_json("M2FOL", "m2fol_meta", report, out);
  } else {
    print_report_text(report, out);
  }
  return report.conforms() ? ExitStatus::Ok : ExitStatus::CheckFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"m2fol - a metamodeling kernel over typed first-order logic"};
  app.require_subcommand(1);

  std::string format = "text";
  bool verbose = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--verbose,-v", verbose, "Verbose output");

  std::string langPath, modelPath, metamodelPath, constraintsPath, outPath;
  std::string aPath, bPath, bindPath, eventName, keepList;
  std::vector<std::string> renameEntries, eventArgs;
  bool reclose = false;

  auto* check = app.add_subcommand("check", "Check a model against its language");
  check->add_option("language", langPath, "Language file (.m2l)")->required();
  check->add_option("model", modelPath, "Model file (.m2m)")->required();

  auto* derive = app.add_subcommand("derive", "Derive a language signature from a metamodel");
  derive->add_option("metamodel", metamodelPath, "Metamodel file (.m2m over M2FOL)")->required();
  derive->add_option("--constraints", constraintsPath, "Constraint declarations to attach (.m2c)");
  derive->add_option("--rename", renameEntries, "Renames old=new, comma separated");
  derive->add_option("-o,--out", outPath, "Output language file");

  auto* fuse = app.add_subcommand("fuse", "Fuse two languages");
  fuse->add_option("left", aPath, "Left language file")->required();
  fuse->add_option("right", bPath, "Right language file")->required();
  fuse->add_option("bindings", bindPath, "Fusion bindings file (.m2b)")->required();
  fuse->add_option("-o,--out", outPath, "Output language file");

  auto* restrict = app.add_subcommand("restrict", "Restrict a language to a type subset");
  restrict->add_option("language", langPath, "Language file")->required();
  restrict->add_option("types", keepList, "Comma-separated type names to keep")->required();
  restrict->add_flag("--reclose", reclose, "Re-close inheritance through dropped intermediates");
  restrict->add_option("-o,--out", outPath, "Output language file");

  auto* event = app.add_subcommand("event", "Apply a domain event to a model");
  event->add_option("language", langPath, "Language file")->required();
  event->add_option("model", modelPath, "Model file")->required();
  event->add_option("name", eventName, "Event name")->required();
  event->add_option("args", eventArgs, "Event arguments name=value");
  event->add_option("-o,--out", outPath, "Output model file");

  app.add_subcommand("bootstrap", "Check the self-description of the built-in metalanguage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream dummy;
    int code = app.exit(e, out, err);
    return code == 0 ? ExitStatus::Ok : ExitStatus::Usage;
  }

  OutputOptions opts;
  opts.json = format == "json";
  opts.verbose = verbose;

  try {
    if (app.got_subcommand("check")) return cmd_check(langPath, modelPath, opts, out, err);
    if (app.got_subcommand("derive")) {
      return cmd_derive(metamodelPath, constraintsPath, parse_rename_list(renameEntries), outPath, opts, out,
                        err);
    }
    if (app.got_subcommand("fuse")) return cmd_fuse(aPath, bPath, bindPath, outPath, opts, out, err);
    if (app.got_subcommand("restrict")) {
      return cmd_restrict(langPath, {keepList}, reclose, outPath, opts, out, err);
    }
    if (app.got_subcommand("event")) {
      return cmd_event(langPath, modelPath, eventName, eventArgs, outPath, opts, out, err);
    }
    if (app.got_subcommand("bootstrap")) return cmd_bootstrap(opts, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return ExitStatus::Internal;
  }
  err << "error: no command\n";
  return ExitStatus::Usage;
}

}  // namespace m2fol
