#include "probelab/table.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "probelab/rng.hpp"

namespace probelab {

void TableConfig::validate() const {
  if (n < 2) throw ConfigError("table capacity n must be >= 2");
  if (x < 2) throw ConfigError("load parameter x must be >= 2");
  if (R < 1 || R > n) throw ConfigError("rebuild window R must satisfy 1 <= R <= n");
}

Table::Table(const TableConfig& config) : config_(config) {
  config_.validate();
  slots_.assign(config_.n, Slot{});
  hash_salt_ = mix64(config_.hash_seed);
}

std::uint32_t Table::hash_of(std::uint64_t key) const {
  // Multiply-shift range reduction of a fully mixed word: a deterministic
  // stand-in for a fully random hash function, pinned by hash_seed.
  const std::uint64_t mixed = mix64(key + hash_salt_);
  return static_cast<std::uint32_t>(
      (static_cast<unsigned __int128>(mixed) * config_.n) >> 64);
}

void Table::count_op(bool is_insert) {
  if (!is_insert && config_.count_inserts_only) return;
  ++ops_since_rebuild_;
  if (config_.auto_rebuild && ops_since_rebuild_ >= config_.R) rebuild();
}

InsertReceipt Table::insert(std::uint64_t key) {
  if (live_count_ + 1 > config_.capacity())
    throw CapacityError("insert would exceed the live-load cap (1 - 1/x)");
  // Membership pre-probe. The placement scan alone can stop at a reusable
  // slot before ever seeing an existing copy of the key (e.g. a tombstone
  // ahead of it), so duplicate detection needs a dedicated lookup. Excluded
  // from the receipt's probe_cost, which covers only the placement scan.
  if (query(key).found) throw DuplicateKeyError("key already present");

  const std::uint32_t h = hash_of(key);
  InsertReceipt receipt = config_.mode == Mode::Ordered ? insert_ordered(key, h)
                                                        : insert_unordered(key, h);
  ++live_count_;
  count_op(/*is_insert=*/true);
  return receipt;
}

InsertReceipt Table::insert_ordered(std::uint64_t key, std::uint32_t h) {
  const std::uint32_t n = config_.n;
  // Phase 1: find j, the first slot at or after h that is free, a tombstone
  // hashing at or after h, or an occupant hashing strictly after h (equal
  // hashes keep incumbents ahead of the newcomer).
  std::int64_t d = 0;
  std::uint32_t j = h;
  bool j_is_occupied = false;
  for (;; ++d) {
    if (d >= static_cast<std::int64_t>(n))
      throw InvariantError("ordered insert scanned the full table without a stop");
    j = wrap(h + static_cast<std::uint64_t>(d));
    const Slot& s = slots_[j];
    if (s.is_free()) break;
    const std::int64_t rel = relative_hash(j, d);
    if (s.is_tombstone() ? rel >= 0 : rel > 0) {
      j_is_occupied = s.is_occupied();
      break;
    }
  }

  InsertReceipt receipt;
  receipt.placed_at = j;
  if (!j_is_occupied) {
    // j itself is reusable: no shift.
    const Slot& consumed = slots_[j];
    if (consumed.is_tombstone()) {
      receipt.landing = Landing{Landing::Kind::Tombstone, j, consumed.hash};
      --tombstone_count_;
    } else {
      receipt.landing = Landing{Landing::Kind::FreeSlot, j, 0};
    }
    receipt.probe_cost = static_cast<std::uint32_t>(d) + 1;
    receipt.shift_len = 0;
  } else {
    // Phase 2: find j', the next reusable slot, and shift [j, j'-1] right.
    std::int64_t d2 = d + 1;
    std::uint32_t jp = j;
    for (;; ++d2) {
      if (d2 >= static_cast<std::int64_t>(2 * n))
        throw InvariantError("ordered insert found no reusable slot");
      jp = wrap(h + static_cast<std::uint64_t>(d2));
      if (!slots_[jp].is_occupied()) break;
    }
    const Slot& consumed = slots_[jp];
    if (consumed.is_tombstone()) {
      receipt.landing = Landing{Landing::Kind::Tombstone, jp, consumed.hash};
      --tombstone_count_;
    } else {
      receipt.landing = Landing{Landing::Kind::FreeSlot, jp, 0};
    }
    receipt.probe_cost = static_cast<std::uint32_t>(d2) + 1;
    receipt.shift_len = static_cast<std::uint32_t>(d2 - d);
    for (std::uint32_t k = jp; k != j; ) {
      const std::uint32_t prev = k == 0 ? n - 1 : k - 1;
      slots_[k] = slots_[prev];
      k = prev;
    }
  }
  slots_[j] = Slot{Slot::Kind::Occupied, h, key};
  return receipt;
}

InsertReceipt Table::insert_unordered(std::uint64_t key, std::uint32_t h) {
  const std::uint32_t n = config_.n;
  for (std::int64_t d = 0; d < static_cast<std::int64_t>(n); ++d) {
    const std::uint32_t pos = wrap(h + static_cast<std::uint64_t>(d));
    const Slot& s = slots_[pos];
    if (s.is_occupied()) continue;
    InsertReceipt receipt;
    receipt.placed_at = pos;
    if (s.is_tombstone()) {
      receipt.landing = Landing{Landing::Kind::Tombstone, pos, s.hash};
      --tombstone_count_;
    } else {
      receipt.landing = Landing{Landing::Kind::FreeSlot, pos, 0};
    }
    receipt.probe_cost = static_cast<std::uint32_t>(d) + 1;
    receipt.shift_len = 0;
    slots_[pos] = Slot{Slot::Kind::Occupied, h, key};
    return receipt;
  }
  throw InvariantError("unordered insert found no reusable slot");
}

QueryResult Table::query(std::uint64_t key) const {
  const std::uint32_t n = config_.n;
  const std::uint32_t h = hash_of(key);
  for (std::int64_t d = 0; d < static_cast<std::int64_t>(n); ++d) {
    const std::uint32_t pos = wrap(h + static_cast<std::uint64_t>(d));
    const Slot& s = slots_[pos];
    if (s.is_free()) return {false, static_cast<std::uint32_t>(d) + 1};
    if (s.is_occupied() && s.key == key) return {true, static_cast<std::uint32_t>(d) + 1};
    if (config_.mode == Mode::Ordered && relative_hash(pos, d) > 0)
      return {false, static_cast<std::uint32_t>(d) + 1};
    // Unordered mode skips tombstones and mismatched occupants alike.
  }
  return {false, n};  // full wrap without a free slot: provably absent
}

DeleteReceipt Table::erase(std::uint64_t key) {
  const std::uint32_t n = config_.n;
  const std::uint32_t h = hash_of(key);
  for (std::int64_t d = 0; d < static_cast<std::int64_t>(n); ++d) {
    const std::uint32_t pos = wrap(h + static_cast<std::uint64_t>(d));
    Slot& s = slots_[pos];
    if (s.is_free()) break;
    if (s.is_occupied() && s.key == key) {
      s = Slot{Slot::Kind::Tombstone, s.hash, 0};
      --live_count_;
      ++tombstone_count_;
      DeleteReceipt receipt{pos, h};
      count_op(/*is_insert=*/false);
      return receipt;
    }
    if (config_.mode == Mode::Ordered && relative_hash(pos, d) > 0) break;
  }
  throw KeyNotFoundError("delete of a key that is not present");
}

RebuildReport Table::rebuild() {
  RebuildReport report{tombstone_count_};
  std::vector<std::pair<std::uint32_t, std::uint64_t>> live;  // (hash, key)
  live.reserve(live_count_);
  for (const Slot& s : slots_)
    if (s.is_occupied()) live.emplace_back(s.hash, s.key);
  std::sort(live.begin(), live.end());

  std::fill(slots_.begin(), slots_.end(), Slot{});
  tombstone_count_ = 0;
  // Replay through the mode's own placement procedure so the result is the
  // layout a fresh fill would produce. Hash order (ties by key) makes the
  // outcome a pure function of the live key set: unordered placement is
  // plain first-free, and ordered shifts resolve runs that wrap past slot 0
  // the same way regardless of the pre-rebuild history.
  for (const auto& [hash, key] : live) {
    if (config_.mode == Mode::Ordered) insert_ordered(key, hash);
    else insert_unordered(key, hash);
  }
  ops_since_rebuild_ = 0;
  ++rebuild_count_;
  return report;
}

void Table::check_invariants() const {
  const std::uint32_t n = config_.n;
  std::uint32_t live = 0, tomb = 0, free_slots = 0;
  for (const Slot& s : slots_) {
    if (s.is_occupied()) ++live;
    else if (s.is_tombstone()) ++tomb;
    else ++free_slots;
  }
  if (live != live_count_ || tomb != tombstone_count_)
    throw InvariantError("slot census disagrees with live/tombstone counters");
  if (live + tomb + free_slots != n)
    throw InvariantError("load accounting does not sum to n");
  for (std::uint32_t pos = 0; pos < n; ++pos) {
    const Slot& s = slots_[pos];
    if (s.is_occupied() && hash_of(s.key) != s.hash)
      throw InvariantError("occupant's stored hash disagrees with the hash function");
  }
  if (free_slots == 0) return;  // runs are undefined without a free slot

  // Walk each maximal run from its head, checking that stored hashes stay
  // inside the run up to the element's own position (no free slot can have
  // separated an element from its hash) and, in ordered mode, that the
  // unrolled hash offsets are non-decreasing.
  for (std::uint32_t head = 0; head < n; ++head) {
    const std::uint32_t before = head == 0 ? n - 1 : head - 1;
    if (slots_[head].is_free() || !slots_[before].is_free()) continue;
    std::int64_t prev_rel = -static_cast<std::int64_t>(n);
    for (std::uint32_t off = 0;; ++off) {
      const std::uint32_t pos = wrap(static_cast<std::uint64_t>(head) + off);
      const Slot& s = slots_[pos];
      if (s.is_free()) break;
      const std::uint32_t hash_off = displacement(s.hash, pos);  // pos - hash
      if (hash_off > off)
        throw InvariantError("element hashes before its run head");
      if (config_.mode == Mode::Ordered) {
        const std::int64_t rel = static_cast<std::int64_t>(off) - hash_off;
        if (rel < prev_rel)
          throw InvariantError("run-sortedness violated");
        prev_rel = rel;
      }
    }
  }
}

void Table::write_snapshot(std::ostream& out) const {
  out << "n=" << config_.n
      << " mode=" << (config_.mode == Mode::Ordered ? "ordered" : "unordered")
      << " seed=" << std::hex << config_.hash_seed << std::dec << "\n";
  for (std::uint32_t pos = 0; pos < config_.n; ++pos) {
    const Slot& s = slots_[pos];
    if (s.is_free()) continue;
    out << "pos=" << pos << " kind=" << (s.is_occupied() ? "occ" : "tomb")
        << " hash=" << s.hash << " key=" << std::hex << s.key << std::dec << "\n";
  }
}

std::string Table::to_snapshot() const {
  std::ostringstream out;
  write_snapshot(out);
  return out.str();
}

namespace {

// Parses `name=` at the start of `token` and returns the remainder.
std::string expect_field(const std::string& token, const std::string& name) {
  const std::string prefix = name + "=";
  if (token.rfind(prefix, 0) != 0)
    throw ParseError("snapshot: expected field '" + name + "', got '" + token + "'");
  return token.substr(prefix.size());
}

std::uint64_t parse_u64(const std::string& text, int base, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used, base);
    if (used != text.size()) throw ParseError("snapshot: trailing junk in " + what);
    return value;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("snapshot: bad " + what + " '" + text + "'");
  }
}

}  // namespace

Table Table::from_snapshot(const std::string& text, std::uint32_t x, std::uint32_t R) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("snapshot: empty input");

  std::istringstream header(line);
  std::string tok_n, tok_mode, tok_seed;
  if (!(header >> tok_n >> tok_mode >> tok_seed))
    throw ParseError("snapshot: malformed header '" + line + "'");
  TableConfig config;
  config.n = static_cast<std::uint32_t>(parse_u64(expect_field(tok_n, "n"), 10, "n"));
  const std::string mode = expect_field(tok_mode, "mode");
  if (mode == "ordered") config.mode = Mode::Ordered;
  else if (mode == "unordered") config.mode = Mode::Unordered;
  else throw ParseError("snapshot: unknown mode '" + mode + "'");
  config.hash_seed = parse_u64(expect_field(tok_seed, "seed"), 16, "seed");
  config.x = x;
  config.R = R == 0 ? config.n : R;

  Table table(config);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tok_pos, tok_kind, tok_hash, tok_key;
    if (!(fields >> tok_pos >> tok_kind >> tok_hash >> tok_key))
      throw ParseError("snapshot: malformed slot line '" + line + "'");
    const std::uint32_t pos =
        static_cast<std::uint32_t>(parse_u64(expect_field(tok_pos, "pos"), 10, "pos"));
    if (pos >= config.n) throw ParseError("snapshot: pos out of range");
    if (!table.slots_[pos].is_free()) throw ParseError("snapshot: duplicate pos");
    const std::string kind = expect_field(tok_kind, "kind");
    const std::uint32_t hash =
        static_cast<std::uint32_t>(parse_u64(expect_field(tok_hash, "hash"), 10, "hash"));
    if (hash >= config.n) throw ParseError("snapshot: hash out of range");
    const std::uint64_t key = parse_u64(expect_field(tok_key, "key"), 16, "key");
    if (kind == "occ") {
      if (table.hash_of(key) != hash)
        throw ParseError("snapshot: occupant hash disagrees with seed");
      table.slots_[pos] = Slot{Slot::Kind::Occupied, hash, key};
      ++table.live_count_;
    } else if (kind == "tomb") {
      table.slots_[pos] = Slot{Slot::Kind::Tombstone, hash, 0};
      ++table.tombstone_count_;
    } else {
      throw ParseError("snapshot: unknown slot kind '" + kind + "'");
    }
  }
  return table;
}

}  // namespace probelab
