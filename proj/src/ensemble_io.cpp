#include "qrand/ensemble_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qrand {

namespace {

constexpr std::string_view kMagic = "QRE1 ";

void append_le(std::string& out, double value)
{
  auto bits = std::bit_cast<std::uint64_t>(value);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<char>(bits & 0xffU));
    bits >>= 8;
  }
}

double read_le(const char* bytes)
{
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[b]);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_file_atomically(const std::filesystem::path& path, const std::string& contents)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

void save_ensemble(const UnitaryEnsemble& ensemble, const std::filesystem::path& path,
                   std::optional<bool> materialize)
{
  const bool is_explicit = ensemble.kind() == EnsembleKind::explicit_members;
  const bool dense = is_explicit || materialize.value_or(ensemble.materialized());
  nlohmann::ordered_json header;
  header["dim"] = ensemble.dim();
  header["n"] = ensemble.size();
  header["kind"] = std::string(to_string(ensemble.kind()));
  if (ensemble.seed()) {
    header["seed"] = ensemble.seed()->root_seed();
  } else {
    header["seed"] = nullptr;
  }
  header["materialized"] = dense;
  if (ensemble.seed() && !ensemble.seed()->path().empty()) header["path"] = ensemble.seed()->path();

  std::string out(kMagic);
  out += header.dump();
  out += '\n';
  if (dense) {
    const Index d = ensemble.dim();
    out.reserve(out.size() + static_cast<std::size_t>(ensemble.size() * d * d) * 16);
    for (Index j = 0; j < ensemble.size(); ++j) {
      const ComplexMatrix u = ensemble.member(j);
      for (Index r = 0; r < d; ++r) {
        for (Index c = 0; c < d; ++c) {
          append_le(out, u(r, c).real());
          append_le(out, u(r, c).imag());
        }
      }
    }
  }
  write_file_atomically(path, out);
}

UnitaryEnsemble load_ensemble(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();

  if (data.compare(0, kMagic.size(), kMagic) != 0) throw FormatError("ensemble file: bad magic");
  const std::size_t newline = data.find('\n');
  if (newline == std::string::npos) throw FormatError("ensemble file: missing header terminator");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(data.substr(kMagic.size(), newline - kMagic.size()));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("ensemble file: malformed header: ") + e.what());
  }
  Index dim = 0;
  Index n = 0;
  EnsembleKind kind = EnsembleKind::haar;
  bool dense = false;
  std::optional<SeededStream> stream;
  try {
    dim = header.at("dim").get<Index>();
    n = header.at("n").get<Index>();
    kind = parse_ensemble_kind(header.at("kind").get<std::string>());
    dense = header.at("materialized").get<bool>();
    if (!header.at("seed").is_null()) {
      std::vector<std::uint64_t> steps;
      if (header.contains("path")) steps = header.at("path").get<std::vector<std::uint64_t>>();
      stream = SeededStream(header.at("seed").get<std::uint64_t>(), std::move(steps));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("ensemble file: bad header field: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("ensemble file: ") + e.what());
  }
  if (dim < 1 || n < 1) throw FormatError("ensemble file: dim and n must be positive");
  if (!dense) {
    if (!stream) throw FormatError("ensemble file: header-only file without a seed");
    return build_ensemble(dim, n, kind, *stream);
  }

  const std::size_t payload = data.size() - newline - 1;
  const std::size_t expected = static_cast<std::size_t>(n * dim * dim) * 16;
  if (payload != expected) {
    throw FormatError("ensemble file: payload has " + std::to_string(payload) + " bytes, expected " +
                      std::to_string(expected));
  }
  const char* cursor = data.data() + newline + 1;
  std::vector<ComplexMatrix> members;
  members.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    ComplexMatrix u(dim, dim);
    for (Index r = 0; r < dim; ++r) {
      for (Index c = 0; c < dim; ++c) {
        u(r, c) = Complex(read_le(cursor), read_le(cursor + 8));
        cursor += 16;
      }
    }
    if (!u.allFinite() || unitarity_residual(u) > 1e-8) {
      throw FormatError("ensemble file: member " + std::to_string(j) + " fails the unitarity audit");
    }
    members.push_back(std::move(u));
  }
  if (kind == EnsembleKind::explicit_members || !stream) return UnitaryEnsemble::from_members(std::move(members));
  return restore_ensemble(dim, n, kind, *stream, std::move(members));
}

}  // namespace qrand
