// Command-line front end. Subcommands and their flags come from the library's
// command schemas; the merged JSON config is handed to ad_run_command.
#include <CLI11.hpp>
#include <json.hpp>

#include <arithdyn/arithdyn.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using Json = nlohmann::json;

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { ad_string_free(ptr); }
};

Json fetch_json(ad_status status, OwnedString& s) {
  if (status != AD_OK) throw std::runtime_error(ad_last_error());
  return Json::parse(s.ptr);
}

struct FlagSlot {
  std::string key;
  std::string kind;
  std::string text;  // for all non-boolean kinds
  bool flag = false;
  CLI::Option* option = nullptr;
};

struct Subcommand {
  std::string name;
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<std::unique_ptr<FlagSlot>> slots;
};

std::string flag_name(const std::string& key) {
  std::string out = key;
  for (char& c : out) c = c == '_' ? '-' : c;
  return "--" + out;
}

Json flag_value(const FlagSlot& s) {
  if (s.kind == "boolean") return s.flag;
  if (s.kind == "integer") {
    std::size_t used = 0;
    long long v = std::stoll(s.text, &used);
    if (used != s.text.size()) throw std::invalid_argument(s.key);
    return v;
  }
  if (s.kind == "number") {
    std::size_t used = 0;
    double v = std::stod(s.text, &used);
    if (used != s.text.size()) throw std::invalid_argument(s.key);
    return v;
  }
  if (s.kind == "map") return Json::parse(s.text);
  return s.text;
}

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json j = Json::parse(buffer.str());
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  return j;
}

std::string schema_default(const Json& key) {
  if (key.at("default").is_null()) return "";
  return key.at("default").is_string() ? key.at("default").get<std::string>() : key.at("default").dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic dynamics on the projective line over Q"};
  app.set_version_flag("--version", std::string(ad_version()));
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Subcommand>> subs;
  try {
    OwnedString names;
    for (const auto& name : fetch_json(ad_command_names(&names.ptr), names)) {
      OwnedString raw;
      const Json schema = fetch_json(ad_command_schema(name.get<std::string>().c_str(), &raw.ptr), raw);
      auto sub = std::make_unique<Subcommand>();
      sub->name = name.get<std::string>();
      sub->app = app.add_subcommand(sub->name, schema.at("summary").get<std::string>());
      sub->app->add_option("--config", sub->config_path, "JSON file with config keys; flags override it");
      for (const auto& key : schema.at("keys")) {
        auto slot = std::make_unique<FlagSlot>();
        slot->key = key.at("name").get<std::string>();
        slot->kind = key.at("kind").get<std::string>();
        std::string help = key.at("help").get<std::string>();
        const std::string def = schema_default(key);
        if (!def.empty()) help += " [default: " + def + "]";
        if (key.at("required").get<bool>()) help += " (required)";
        if (slot->kind == "boolean") {
          slot->option = sub->app->add_flag(flag_name(slot->key), slot->flag, help);
        } else {
          slot->option = sub->app->add_option(flag_name(slot->key), slot->text, help);
          if (slot->kind == "map") slot->option->type_name("JSON");
          else slot->option->type_name(slot->kind == "integer" || slot->kind == "number" ? "NUM" : "TEXT");
        }
        sub->slots.push_back(std::move(slot));
      }
      subs.push_back(std::move(sub));
    }
  } catch (const std::exception& e) {
    std::cerr << "arithdyn: cannot load command schemas: " << e.what() << "\n";
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    Json config = Json::object();
    try {
      if (!sub->config_path.empty()) config = read_config(sub->config_path);
      for (const auto& slot : sub->slots) {
        if (slot->option->count() > 0) config[slot->key] = flag_value(*slot);
      }
    } catch (const std::exception& e) {
      std::cerr << "arithdyn " << sub->name << ": invalid input: " << e.what() << "\n\n" << sub->app->help();
      return 1;
    }

    OwnedString report;
    int exit_code = 1;
    const std::string config_text = config.dump();
    if (ad_run_command(sub->name.c_str(), config_text.c_str(), &report.ptr, &exit_code) != AD_OK) {
      std::cerr << "arithdyn " << sub->name << ": " << ad_last_error() << "\n";
      return 1;
    }

    const std::string output = config.contains("output") && config["output"].is_string()
                                   ? config["output"].get<std::string>()
                                   : std::string();
    if (output.empty()) {
      std::cout << report.ptr;
    } else {
      std::ofstream out(output, std::ios::binary);
      out << report.ptr;
      if (!out) {
        std::cerr << "arithdyn: cannot write " << output << "\n";
        return 1;
      }
    }
    if (exit_code == 1) std::cerr << sub->app->help();
    return exit_code;
  }
  return 1;
}
