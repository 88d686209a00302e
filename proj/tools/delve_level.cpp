// Level generation, mutation and inspection for curriculum tooling.
//
//   delve_level gen --seed 7 --tier extended --kind world --out w.bin
//   delve_level mutate --in w.bin --op rswap --seed 3 --out w2.bin
//   delve_level show --in w2.bin --floor 2
//   delve_level layout --tier classic

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>

#include <CLI11.hpp>

#include "delve/catalog.hpp"
#include "delve/obs.hpp"
#include "delve/serialize.hpp"
#include "delve/worldgen.hpp"

namespace {

using namespace delve;

struct Loaded {
  std::optional<LevelParams> params;
  std::optional<World> world;
};

Loaded load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Loaded out;
  if (bytes.size() >= 4 && bytes[0] == 'D' && bytes[1] == 'E' && bytes[2] == 'L' && bytes[3] == 'V') {
    switch (peek_kind(bytes)) {
      case PayloadKind::LevelParams: out.params = level_params_from_binary(bytes); break;
      case PayloadKind::World: out.world = world_from_binary(bytes); break;
      case PayloadKind::GameState: throw std::runtime_error(path + " holds a game state, not a level");
    }
    return out;
  }
  const auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "level_params") out.params = level_params_from_json(j);
  else if (kind == "world") out.world = world_from_json(j);
  else throw std::runtime_error(path + " holds a " + kind + ", not a level");
  return out;
}

void save(const std::string& path, bool binary, const std::vector<std::uint8_t>& bin, const nlohmann::json& j) {
  if (path.empty()) {
    if (binary) throw std::runtime_error("binary output needs --out");
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (binary) f.write(reinterpret_cast<const char*>(bin.data()), static_cast<std::streamsize>(bin.size()));
  else f << j.dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write " + path);
}

char glyph(BlockId b) {
  switch (b) {
    case BlockId::Grass: return '.';
    case BlockId::Sand: return ':';
    case BlockId::Water: return '~';
    case BlockId::Lava: return '%';
    case BlockId::Tree: return 'T';
    case BlockId::Stone: return '#';
    case BlockId::Path: return ' ';
    case BlockId::Coal: return 'c';
    case BlockId::Iron: return 'i';
    case BlockId::Diamond: return 'd';
    case BlockId::Sapphire: return 's';
    case BlockId::Ruby: return 'r';
    case BlockId::Wall: return '=';
    case BlockId::Chest: return 'C';
    default: return '?';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, mutate and inspect levels"};
  app.require_subcommand(1);
  const std::map<std::string, Tier> tiers = {{"classic", Tier::Classic}, {"extended", Tier::Extended}};

  Tier tier = Tier::Classic;
  std::uint64_t seed = 0;
  std::string kind = "world";
  std::string in_path, out_path, op = "noise";
  std::string format = "json";
  double range = kDefaultNoiseMutation;
  int floor = 0;

  auto* gen = app.add_subcommand("gen", "Sample level parameters and optionally generate the world");
  gen->add_option("--seed", seed, "Level seed");
  gen->add_option("--tier", tier, "classic or extended")->transform(CLI::CheckedTransformer(tiers, CLI::ignore_case));
  gen->add_option("--kind", kind, "params or world")->check(CLI::IsMember({"params", "world"}));

  auto* mutate = app.add_subcommand("mutate", "Apply one mutation operator");
  mutate->add_option("--in", in_path, "Level file (binary or JSON)")->required();
  mutate->add_option("--op", op, "noise (params), swap or rswap (world)")
      ->check(CLI::IsMember({"noise", "swap", "rswap"}));
  mutate->add_option("--seed", seed, "Mutation seed");
  mutate->add_option("--range", range, "Noise perturbation bound in radians");

  auto* show = app.add_subcommand("show", "Print a floor as ASCII");
  show->add_option("--in", in_path, "Level file")->required();
  show->add_option("--tier", tier, "Tier used when the file holds params")
      ->transform(CLI::CheckedTransformer(tiers, CLI::ignore_case));
  show->add_option("--floor", floor, "Floor index");

  auto* layout = app.add_subcommand("layout", "Print the symbolic observation manifest as JSON");
  layout->add_option("--tier", tier, "classic or extended")->transform(CLI::CheckedTransformer(tiers, CLI::ignore_case));

  for (auto* sub : {gen, mutate}) {
    sub->add_option("--out", out_path, "Output file (stdout for JSON when omitted)");
    sub->add_option("--format", format, "json or binary")->check(CLI::IsMember({"json", "binary"}));
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const bool binary = format == "binary";
    if (layout->parsed()) {
      nlohmann::json j = layout_manifest(tier);
      char hash[19];
      std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(layout_hash(tier)));
      j["hash"] = hash;
      std::cout << j.dump(2) << "\n";
    } else if (gen->parsed()) {
      const LevelParams params = make_level_params(seed);
      if (kind == "params") save(out_path, binary, to_binary(params), to_json(params));
      else {
        const World w = generate_world(params, tier);
        save(out_path, binary, to_binary(w), to_json(w));
      }
    } else if (mutate->parsed()) {
      const Loaded l = load(in_path);
      const RngStream s = RngStream::from_seed(seed).split(streams::kMutation);
      if (op == "noise") {
        if (!l.params) throw std::runtime_error("noise mutation applies to level params");
        const LevelParams p = mutate_noise(*l.params, s, range);
        save(out_path, binary, to_binary(p), to_json(p));
      } else {
        if (!l.world) throw std::runtime_error(op + " mutation applies to worlds");
        const World w = op == "swap" ? mutate_swap(*l.world, s) : mutate_rswap(*l.world, s);
        save(out_path, binary, to_binary(w), to_json(w));
      }
    } else {
      const Loaded l = load(in_path);
      const World w = l.world ? *l.world : generate_world(*l.params, tier);
      if (floor < 0 || floor >= static_cast<int>(w.floors.size())) throw std::runtime_error("floor out of range");
      const FloorMap& m = w.floors[static_cast<std::size_t>(floor)];
      std::cout << floor_name(floor) << " " << m.rows << "x" << m.cols << "\n";
      for (int r = 0; r < m.rows; ++r) {
        std::string line;
        for (int c = 0; c < m.cols; ++c) {
          const Pos p{static_cast<std::int16_t>(r), static_cast<std::int16_t>(c)};
          if (p == m.spawn) line += '@';
          else if (m.item(p) == ItemId::LadderDown || m.item(p) == ItemId::LadderDownBlocked) line += '>';
          else if (m.item(p) == ItemId::LadderUp) line += '<';
          else line += glyph(m.block(p));
        }
        std::cout << line << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "delve_level: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
