#include "probelab/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace probelab {

FreeSlotSnapshot FreeSlotSnapshot::from_table(const Table& table) {
  FreeSlotSnapshot snap;
  snap.n_ = table.n();
  snap.prefix_.assign(snap.n_ + 1, 0);
  for (std::uint32_t i = 0; i < snap.n_; ++i)
    snap.prefix_[i + 1] = snap.prefix_[i] + (table.slot(i).is_free() ? 1 : 0);
  return snap;
}

FreeSlotSnapshot FreeSlotSnapshot::from_free_positions(
    std::uint32_t n, const std::vector<std::uint32_t>& positions) {
  std::vector<bool> free_bits(n, false);
  for (std::uint32_t pos : positions) {
    if (pos >= n) throw ParseError("free-slot position out of range");
    free_bits[pos] = true;
  }
  FreeSlotSnapshot snap;
  snap.n_ = n;
  snap.prefix_.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    snap.prefix_[i + 1] = snap.prefix_[i] + (free_bits[i] ? 1 : 0);
  return snap;
}

std::vector<std::uint32_t> FreeSlotSnapshot::free_positions() const {
  std::vector<std::uint32_t> out;
  out.reserve(total_free());
  for (std::uint32_t i = 0; i < n_; ++i)
    if (is_free(i)) out.push_back(i);
  return out;
}

std::uint32_t FreeSlotSnapshot::count_closed(std::uint32_t lo, std::uint32_t hi) const {
  if (lo <= hi) return prefix_[hi + 1] - prefix_[lo];
  // Wraps: [lo, n) plus [0, hi].
  return (prefix_[n_] - prefix_[lo]) + prefix_[hi + 1];
}

void Trace::validate() const {
  if (free_snapshot.n() != n)
    throw InvariantError("trace: snapshot size disagrees with n");
  for (const auto& [key, hash] : initial_set) {
    (void)key;
    if (hash >= n) throw InvariantError("trace: initial-set hash out of range");
  }
  std::uint32_t expected = 1;
  for (const OpRecord& op : window_ops) {
    if (op.index_in_window != expected++)
      throw InvariantError("trace: timestamps are not consecutive from 1");
    if (op.hash >= n || op.position >= n)
      throw InvariantError("trace: op index out of range");
    if (op.kind == OpRecord::Kind::Insert && !op.landing.has_value())
      throw InvariantError("trace: insert record without a landing");
    if (op.kind == OpRecord::Kind::Delete && op.landing.has_value())
      throw InvariantError("trace: delete record with a landing");
  }
}

void Trace::write(std::ostream& out) const {
  out << "trace n=" << n << " mode=" << (mode == Mode::Ordered ? "ordered" : "unordered")
      << " seed=" << std::hex << hash_seed << std::dec << " x=" << x
      << " ops=" << window_ops.size() << "\n";
  for (const auto& [key, hash] : initial_set)
    out << "init key=" << std::hex << key << std::dec << " hash=" << hash << "\n";
  for (std::uint32_t pos = 0; pos < n; ++pos)
    if (free_snapshot.is_free(pos)) out << "free pos=" << pos << "\n";
  for (const OpRecord& op : window_ops) {
    out << "op i=" << op.index_in_window
        << " kind=" << (op.kind == OpRecord::Kind::Insert ? "ins" : "del")
        << " key=" << std::hex << op.key << std::dec << " hash=" << op.hash
        << " pos=" << op.position << " landing=";
    if (!op.landing.has_value()) {
      out << "none";
    } else if (op.landing->kind == Landing::Kind::FreeSlot) {
      out << "free:" << op.landing->position;
    } else {
      out << "tomb:" << op.landing->position << ":" << op.landing->hash;
    }
    out << " target=";
    switch (op.deletion_target.kind) {
      case DeletionTarget::Kind::None: out << "none"; break;
      case DeletionTarget::Kind::Direct: out << "direct:" << op.deletion_target.target; break;
      case DeletionTarget::Kind::SecondChoice:
        out << "second:" << op.deletion_target.target << ":"
            << op.deletion_target.chosen_position;
        break;
    }
    out << "\n";
  }
}

std::string Trace::serialize() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

namespace {

std::string field_value(const std::string& token, const char* name) {
  const std::string prefix = std::string(name) + "=";
  if (token.rfind(prefix, 0) != 0)
    throw ParseError("trace: expected field '" + std::string(name) + "', got '" + token + "'");
  return token.substr(prefix.size());
}

std::uint64_t to_u64(const std::string& text, int base, const char* what) {
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used, base);
    if (used != text.size()) throw ParseError(std::string("trace: trailing junk in ") + what);
    return value;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string("trace: bad ") + what + " '" + text + "'");
  }
}

// Splits "a:b:c" into its colon-separated parts.
std::vector<std::string> split_colon(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = text.find(':', start);
    if (sep == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, sep - start));
    start = sep + 1;
  }
}

}  // namespace

Trace Trace::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace: empty input");

  Trace trace;
  {
    std::istringstream header(line);
    std::string tag, tok_n, tok_mode, tok_seed, tok_x, tok_ops;
    if (!(header >> tag >> tok_n >> tok_mode >> tok_seed >> tok_x >> tok_ops) ||
        tag != "trace")
      throw ParseError("trace: malformed header '" + line + "'");
    trace.n = static_cast<std::uint32_t>(to_u64(field_value(tok_n, "n"), 10, "n"));
    const std::string mode = field_value(tok_mode, "mode");
    if (mode == "ordered") trace.mode = Mode::Ordered;
    else if (mode == "unordered") trace.mode = Mode::Unordered;
    else throw ParseError("trace: unknown mode '" + mode + "'");
    trace.hash_seed = to_u64(field_value(tok_seed, "seed"), 16, "seed");
    trace.x = static_cast<std::uint32_t>(to_u64(field_value(tok_x, "x"), 10, "x"));
    trace.window_ops.reserve(to_u64(field_value(tok_ops, "ops"), 10, "ops"));
  }

  std::vector<std::uint32_t> free_positions;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "init") {
      std::string tok_key, tok_hash;
      if (!(fields >> tok_key >> tok_hash))
        throw ParseError("trace: malformed init line '" + line + "'");
      trace.initial_set.emplace_back(
          to_u64(field_value(tok_key, "key"), 16, "key"),
          static_cast<std::uint32_t>(to_u64(field_value(tok_hash, "hash"), 10, "hash")));
    } else if (tag == "free") {
      std::string tok_pos;
      if (!(fields >> tok_pos)) throw ParseError("trace: malformed free line '" + line + "'");
      free_positions.push_back(
          static_cast<std::uint32_t>(to_u64(field_value(tok_pos, "pos"), 10, "pos")));
    } else if (tag == "op") {
      std::string tok_i, tok_kind, tok_key, tok_hash, tok_pos, tok_landing, tok_target;
      if (!(fields >> tok_i >> tok_kind >> tok_key >> tok_hash >> tok_pos >> tok_landing >>
            tok_target))
        throw ParseError("trace: malformed op line '" + line + "'");
      OpRecord op;
      op.index_in_window = static_cast<std::uint32_t>(to_u64(field_value(tok_i, "i"), 10, "i"));
      const std::string kind = field_value(tok_kind, "kind");
      if (kind == "ins") op.kind = OpRecord::Kind::Insert;
      else if (kind == "del") op.kind = OpRecord::Kind::Delete;
      else throw ParseError("trace: unknown op kind '" + kind + "'");
      op.key = to_u64(field_value(tok_key, "key"), 16, "key");
      op.hash = static_cast<std::uint32_t>(to_u64(field_value(tok_hash, "hash"), 10, "hash"));
      op.position = static_cast<std::uint32_t>(to_u64(field_value(tok_pos, "pos"), 10, "pos"));

      const std::string landing = field_value(tok_landing, "landing");
      if (landing != "none") {
        const std::vector<std::string> parts = split_colon(landing);
        if (parts[0] == "free" && parts.size() == 2) {
          op.landing = Landing{Landing::Kind::FreeSlot,
                               static_cast<std::uint32_t>(to_u64(parts[1], 10, "landing pos")), 0};
        } else if (parts[0] == "tomb" && parts.size() == 3) {
          op.landing = Landing{Landing::Kind::Tombstone,
                               static_cast<std::uint32_t>(to_u64(parts[1], 10, "landing pos")),
                               static_cast<std::uint32_t>(to_u64(parts[2], 10, "landing hash"))};
        } else {
          throw ParseError("trace: malformed landing '" + landing + "'");
        }
      }

      const std::string target = field_value(tok_target, "target");
      if (target != "none") {
        const std::vector<std::string> parts = split_colon(target);
        if (parts[0] == "direct" && parts.size() == 2) {
          op.deletion_target = DeletionTarget{
              DeletionTarget::Kind::Direct,
              static_cast<std::uint32_t>(to_u64(parts[1], 10, "target")), 0};
        } else if (parts[0] == "second" && parts.size() == 3) {
          op.deletion_target = DeletionTarget{
              DeletionTarget::Kind::SecondChoice,
              static_cast<std::uint32_t>(to_u64(parts[1], 10, "target")),
              static_cast<std::uint32_t>(to_u64(parts[2], 10, "chosen position"))};
        } else {
          throw ParseError("trace: malformed target '" + target + "'");
        }
      }
      trace.window_ops.push_back(op);
    } else {
      throw ParseError("trace: unknown line tag '" + tag + "'");
    }
  }
  trace.free_snapshot = FreeSlotSnapshot::from_free_positions(trace.n, free_positions);
  trace.validate();
  return trace;
}

Table replay_trace(const Trace& trace) {
  TableConfig config;
  config.n = trace.n;
  config.x = trace.x;
  config.R = trace.n;
  config.mode = trace.mode;
  config.hash_seed = trace.hash_seed;
  config.auto_rebuild = false;
  Table table(config);

  // The window starts at a rebuild boundary, so the initial layout is the
  // canonical one: replay the initial set in (hash, key) order.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> initial;
  initial.reserve(trace.initial_set.size());
  for (const auto& [key, hash] : trace.initial_set) {
    if (table.hash_of(key) != hash)
      throw InvariantError("replay: initial-set hash disagrees with the hash function");
    initial.emplace_back(hash, key);
  }
  std::sort(initial.begin(), initial.end());
  for (const auto& [hash, key] : initial) {
    (void)hash;
    table.insert(key);
  }

  // The canonical layout must reproduce the recorded free-slot snapshot.
  for (std::uint32_t pos = 0; pos < trace.n; ++pos)
    if (table.slot(pos).is_free() != trace.free_snapshot.is_free(pos))
      throw InvariantError("replay: free-slot snapshot disagrees with the initial layout");

  for (const OpRecord& op : trace.window_ops) {
    if (op.kind == OpRecord::Kind::Insert) {
      const InsertReceipt receipt = table.insert(op.key);
      if (table.hash_of(op.key) != op.hash || receipt.placed_at != op.position ||
          !op.landing.has_value() || !(receipt.landing == *op.landing))
        throw InvariantError("replay: insert receipt disagrees with the trace record");
    } else {
      const DeleteReceipt receipt = table.erase(op.key);
      if (receipt.position != op.position || receipt.hash != op.hash)
        throw InvariantError("replay: delete receipt disagrees with the trace record");
    }
  }
  return table;
}

}  // namespace probelab
