#pragma once

// Fair, restartable enumeration streams.
//
// A cursor performs one bounded unit of work per pull and reports one of
// three outcomes: it produced a value, it did work without producing one
// (e.g. a filter rejected a candidate), or the stream is exhausted. The
// skip outcome is what keeps diagonal interleavings fair when some rows
// are sparse or empty: no single pull can block.
//
// Streams are restartable; every consumer gets an independent cursor.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ptyx/error.hpp"

namespace ptyx {

enum class StepKind { yield, skip, end };

template <class T>
struct Step {
  StepKind kind;
  T value{};  // meaningful only when kind == yield

  static Step yielded(T v) { return {StepKind::yield, std::move(v)}; }
  static Step skipped() { return {StepKind::skip, T{}}; }
  static Step ended() { return {StepKind::end, T{}}; }
};

template <class T>
using Cursor = std::function<Step<T>()>;

template <class T>
struct Stream {
  std::function<Cursor<T>()> start;

  bool valid() const { return static_cast<bool>(start); }
};

// First values of a stream, doing at most `step_budget` pulls. Returns fewer
// than `count` values when the stream ends or the budget runs out; `*spent`
// reports the pulls used.
template <class T>
std::vector<T> take(const Stream<T>& s, std::size_t count, std::size_t step_budget,
                    std::size_t* spent = nullptr) {
  std::vector<T> out;
  auto cur = s.start();
  std::size_t steps = 0;
  while (out.size() < count && steps < step_budget) {
    ++steps;
    Step<T> st = cur();
    if (st.kind == StepKind::yield) out.push_back(std::move(st.value));
    else if (st.kind == StepKind::end) break;
  }
  if (spent) *spent = steps;
  return out;
}

// As take, but throws when the budget is exhausted before `count` values
// appeared and the stream had not ended: used where the caller needs a
// certificate, never a silent shortfall.
template <class T>
std::vector<T> take_exactly(const Stream<T>& s, std::size_t count, std::size_t step_budget,
                            const char* what) {
  std::vector<T> out;
  auto cur = s.start();
  std::size_t steps = 0;
  while (out.size() < count) {
    if (steps >= step_budget) throw BudgetExceeded(what);
    ++steps;
    Step<T> st = cur();
    if (st.kind == StepKind::yield) out.push_back(std::move(st.value));
    else if (st.kind == StepKind::end) return out;  // genuinely finite
  }
  return out;
}

template <class T>
Stream<T> stream_of(std::vector<T> values) {
  return {[values = std::move(values)]() -> Cursor<T> {
    auto i = std::make_shared<std::size_t>(0);
    return [values, i]() -> Step<T> {
      if (*i >= values.size()) return Step<T>::ended();
      return Step<T>::yielded(values[(*i)++]);
    };
  }};
}

template <class T, class F>
auto map(const Stream<T>& s, F f) -> Stream<decltype(f(std::declval<T>()))> {
  using U = decltype(f(std::declval<T>()));
  return {[s, f]() -> Cursor<U> {
    auto cur = s.start();
    return [cur, f]() -> Step<U> {
      Step<T> st = cur();
      if (st.kind == StepKind::yield) return Step<U>::yielded(f(std::move(st.value)));
      return {st.kind, U{}};
    };
  }};
}

template <class T>
Stream<T> filter(const Stream<T>& s, std::function<bool(const T&)> pred) {
  return {[s, pred]() -> Cursor<T> {
    auto cur = s.start();
    return [cur, pred]() -> Step<T> {
      Step<T> st = cur();
      if (st.kind == StepKind::yield && !pred(st.value)) return Step<T>::skipped();
      return st;
    };
  }};
}

// Diagonal interleaving of a stream of streams. Cursors are scheduled
// round-robin; one fresh row is opened per full round, so every row is
// pulled infinitely often regardless of how unproductive its peers are.
template <class T>
Stream<T> diagonal(const Stream<Stream<T>>& rows) {
  return {[rows]() -> Cursor<T> {
    struct State {
      Cursor<Stream<T>> outer;
      bool outer_done = false;
      std::vector<Cursor<T>> active;
      std::size_t next = 0;  // index into active; == active.size() means "pull outer"
    };
    auto st = std::make_shared<State>();
    st->outer = rows.start();
    return [st]() -> Step<T> {
      if (st->next >= st->active.size()) {
        st->next = 0;
        if (!st->outer_done) {
          Step<Stream<T>> o = st->outer();
          if (o.kind == StepKind::yield) st->active.push_back(o.value.start());
          else if (o.kind == StepKind::end) st->outer_done = true;
          return Step<T>::skipped();
        }
        if (st->active.empty()) return Step<T>::ended();
      }
      std::size_t i = st->next++;
      Step<T> r = st->active[i]();
      if (r.kind == StepKind::end) {
        st->active.erase(st->active.begin() + i);
        if (st->next > i) --st->next;
        if (st->outer_done && st->active.empty()) return Step<T>::ended();
        return Step<T>::skipped();
      }
      if (r.kind == StepKind::skip) return Step<T>::skipped();
      return r;
    };
  }};
}

template <class T>
Stream<T> concat2(const Stream<T>& a, const Stream<T>& b) {
  return {[a, b]() -> Cursor<T> {
    auto cur = std::make_shared<Cursor<T>>(a.start());
    auto on_first = std::make_shared<bool>(true);
    return [cur, on_first, b]() -> Step<T> {
      Step<T> st = (*cur)();
      if (st.kind == StepKind::end && *on_first) {
        *on_first = false;
        *cur = b.start();
        return Step<T>::skipped();
      }
      return st;
    };
  }};
}

}  // namespace ptyx
