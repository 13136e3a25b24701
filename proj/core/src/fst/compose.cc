#include "scenefst/fst/compose.h"

#include <array>
#include <deque>
#include <map>
#include <span>
#include <tuple>

#include "scenefst/errors.h"

namespace scenefst::fst {
namespace {

// Three-state epsilon filter. A-alone moves (a emits epsilon, b waits) are
// allowed from states 0 and 2 and lead to 2; B-alone moves (b reads epsilon,
// a waits) from 0 and 1 and lead to 1; simultaneous epsilon moves only from
// 0. Any real symbol match resets the filter to 0.
enum FilterState : std::uint32_t { kFilterClear = 0, kFilterBAlone = 1, kFilterAAlone = 2 };

void CheckAlphabets(const std::shared_ptr<const SymbolTable>& a_out,
                    const std::shared_ptr<const SymbolTable>& b_in) {
  if (!SameAlphabet(a_out, b_in)) {
    throw ConfigError("compose: output alphabet of the left machine differs from "
                      "the input alphabet of the right machine");
  }
}

StateKey JoinKey(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                 std::uint32_t filter) {
  StateKey key;
  key.reserve(a.size() + b.size() + 2);
  key.push_back(static_cast<std::uint32_t>(a.size()));
  key.insert(key.end(), a.begin(), a.end());
  key.insert(key.end(), b.begin(), b.end());
  key.push_back(filter);
  return key;
}

StateKey JoinKey(const StateKey& a, const StateKey& b, std::uint32_t filter) {
  return JoinKey(std::span<const std::uint32_t>(a.data(), a.size()),
                 std::span<const std::uint32_t>(b.data(), b.size()), filter);
}

class ComposedMachine final : public LazyMachine {
 public:
  ComposedMachine(std::shared_ptr<const LazyMachine> a, std::shared_ptr<const LazyMachine> b)
      : a_(std::move(a)), b_(std::move(b)) {
    CheckAlphabets(a_->OutputSymbols(), b_->InputSymbols());
  }

  std::optional<StateKey> Start() const override {
    auto a_start = a_->Start();
    auto b_start = b_->Start();
    if (!a_start || !b_start) return std::nullopt;
    return JoinKey(*a_start, *b_start, kFilterClear);
  }

  TropicalWeight Final(const StateKey& state) const override {
    const Parts parts = Split(state);
    const TropicalWeight a_final = a_->Final(parts.a);
    if (a_final.IsZero()) return a_final;
    return Times(a_final, b_->Final(parts.b));
  }

  void Arcs(const StateKey& state, std::vector<LazyArc>& out) const override {
    Expand(state, std::nullopt, out);
  }

  void ArcsWithInput(const StateKey& state, Label ilabel,
                     std::vector<LazyArc>& out) const override {
    Expand(state, ilabel, out);
  }

  const std::shared_ptr<const SymbolTable>& InputSymbols() const override {
    return a_->InputSymbols();
  }
  const std::shared_ptr<const SymbolTable>& OutputSymbols() const override {
    return b_->OutputSymbols();
  }

 private:
  struct Parts {
    StateKey a;
    StateKey b;
    std::uint32_t filter;
  };

  static Parts Split(const StateKey& key) {
    const std::uint32_t a_len = key[0];
    Parts parts;
    parts.a.assign(key.begin() + 1, key.begin() + 1 + a_len);
    parts.b.assign(key.begin() + 1 + a_len, key.end() - 1);
    parts.filter = key.back();
    return parts;
  }

  void Expand(const StateKey& state, std::optional<Label> ilabel,
              std::vector<LazyArc>& out) const {
    const Parts parts = Split(state);
    const std::uint32_t filter = parts.filter;

    std::vector<LazyArc> a_arcs;
    if (ilabel) {
      a_->ArcsWithInput(parts.a, *ilabel, a_arcs);
    } else {
      a_->Arcs(parts.a, a_arcs);
    }

    // b's epsilon-input arcs serve both simultaneous and B-alone moves.
    std::vector<LazyArc> b_eps;
    const bool need_b_eps = filter != kFilterAAlone;
    if (need_b_eps) b_->ArcsWithInput(parts.b, kEpsilon, b_eps);

    std::vector<LazyArc> b_arcs;
    for (const LazyArc& a_arc : a_arcs) {
      if (a_arc.olabel == kEpsilon) {
        if (filter != kFilterBAlone) {
          Emit(a_arc.ilabel, kEpsilon, a_arc.weight, a_arc.next, parts.b, kFilterAAlone, out);
        }
        if (filter == kFilterClear) {
          for (const LazyArc& b_arc : b_eps) {
            Emit(a_arc.ilabel, b_arc.olabel, Times(a_arc.weight, b_arc.weight), a_arc.next,
                 b_arc.next, kFilterClear, out);
          }
        }
        continue;
      }
      b_arcs.clear();
      b_->ArcsWithInput(parts.b, a_arc.olabel, b_arcs);
      for (const LazyArc& b_arc : b_arcs) {
        Emit(a_arc.ilabel, b_arc.olabel, Times(a_arc.weight, b_arc.weight), a_arc.next,
             b_arc.next, kFilterClear, out);
      }
    }

    // B-alone moves consume no input, so they only belong to an epsilon query.
    if (need_b_eps && (!ilabel || *ilabel == kEpsilon)) {
      for (const LazyArc& b_arc : b_eps) {
        Emit(kEpsilon, b_arc.olabel, b_arc.weight, parts.a, b_arc.next, kFilterBAlone, out);
      }
    }
  }

  static void Emit(Label ilabel, Label olabel, TropicalWeight weight, const StateKey& a_next,
                   const StateKey& b_next, std::uint32_t filter, std::vector<LazyArc>& out) {
    if (weight.IsZero()) return;
    out.push_back({ilabel, olabel, weight, JoinKey(a_next, b_next, filter)});
  }

  std::shared_ptr<const LazyMachine> a_;
  std::shared_ptr<const LazyMachine> b_;
};

}  // namespace

std::shared_ptr<const LazyMachine> Compose(std::shared_ptr<const LazyMachine> a,
                                           std::shared_ptr<const LazyMachine> b) {
  if (!a || !b) throw ConfigError("compose: null operand");
  return std::make_shared<ComposedMachine>(std::move(a), std::move(b));
}

std::shared_ptr<const LazyMachine> Compose(std::shared_ptr<const Machine> a,
                                           std::shared_ptr<const Machine> b) {
  return Compose(AsLazy(std::move(a)), AsLazy(std::move(b)));
}

Machine ComposeEager(const Machine& a, const Machine& b) {
  CheckAlphabets(a.OutputSymbols(), b.InputSymbols());
  Machine result(a.InputSymbols(), b.OutputSymbols());
  if (a.Empty() || b.Empty()) return result;

  using Triple = std::tuple<StateId, StateId, std::uint32_t>;
  std::map<Triple, StateId> ids;
  std::deque<Triple> queue;
  auto intern = [&](const Triple& t) {
    if (auto it = ids.find(t); it != ids.end()) return it->second;
    const StateId id = result.AddState();
    ids.emplace(t, id);
    queue.push_back(t);
    return id;
  };
  auto add = [&](StateId source, Label il, Label ol, TropicalWeight w, const Triple& next) {
    if (w.IsZero()) return;
    result.AddArc(source, {il, ol, w, intern(next)});
  };

  result.SetStart(intern({a.Start(), b.Start(), kFilterClear}));
  while (!queue.empty()) {
    const auto [sa, sb, filter] = queue.front();
    queue.pop_front();
    const StateId source = ids.at({sa, sb, filter});
    result.SetFinal(source, Times(a.Final(sa), b.Final(sb)));

    for (const Arc& x : a.Arcs(sa)) {
      if (x.olabel == kEpsilon) {
        if (filter != kFilterBAlone) {
          add(source, x.ilabel, kEpsilon, x.weight, {x.next, sb, kFilterAAlone});
        }
        if (filter == kFilterClear) {
          for (const Arc& y : b.Arcs(sb)) {
            if (y.ilabel != kEpsilon) continue;
            add(source, x.ilabel, y.olabel, Times(x.weight, y.weight),
                {x.next, y.next, kFilterClear});
          }
        }
        continue;
      }
      for (const Arc& y : b.Arcs(sb)) {
        if (y.ilabel != x.olabel) continue;
        add(source, x.ilabel, y.olabel, Times(x.weight, y.weight),
            {x.next, y.next, kFilterClear});
      }
    }
    if (filter != kFilterAAlone) {
      for (const Arc& y : b.Arcs(sb)) {
        if (y.ilabel != kEpsilon) continue;
        add(source, kEpsilon, y.olabel, y.weight, {sa, y.next, kFilterBAlone});
      }
    }
  }
  return result;
}

}  // namespace scenefst::fst
