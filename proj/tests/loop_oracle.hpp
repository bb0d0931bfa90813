#pragma once

// Executes the example loop nests and records read-after-write pairs from
// the last writer of every array cell. Independent of the relation code.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace loops {

using EdgeSet = std::set<std::pair<std::string, std::string>>;

struct Trace {
  std::set<std::string> vertices;
  EdgeSet edges;
  std::map<std::pair<std::string, std::vector<long long>>, std::string> writer;

  static std::string name(const std::string& s, std::vector<long long> ix) {
    std::string out = s + "[";
    for (size_t k = 0; k < ix.size(); ++k) out += (k ? "," : "") + std::to_string(ix[k]);
    return out + "]";
  }
  void input(const std::string& array, std::vector<long long> ix) {
    std::string n = name(array, ix);
    vertices.insert(n);
    writer[{array, ix}] = n;
  }
  void read(const std::string& inst, const std::string& array, std::vector<long long> ix) {
    auto it = writer.find({array, ix});
    if (it != writer.end()) edges.insert({it->second, inst});
  }
  void write(const std::string& inst, const std::string& array, std::vector<long long> ix) {
    vertices.insert(inst);
    writer[{array, ix}] = inst;
  }
};

inline Trace jacobi(long long T, long long N) {
  Trace tr;
  for (long long i = 0; i < N; ++i) tr.input("I", {i});
  for (long long i = 0; i < N; ++i) {
    auto s = Trace::name("S1", {i});
    tr.read(s, "I", {i});
    tr.write(s, "A", {i});
  }
  for (long long t = 1; t < T; ++t) {
    for (long long i = 1; i < N - 1; ++i) {
      auto s = Trace::name("S2", {t, i});
      for (long long d : {-1, 0, 1}) tr.read(s, "A", {i + d});
      tr.write(s, "B", {i});
    }
    for (long long i = 1; i < N - 1; ++i) {
      auto s = Trace::name("S3", {t, i});
      tr.read(s, "B", {i});
      tr.write(s, "A", {i});
    }
  }
  return tr;
}

// One outer iteration: the inputs are the arrays as they enter it.
inline Trace scaled_matmul(long long N) {
  Trace tr;
  for (long long i = 0; i < N; ++i)
    for (long long j = 0; j < N; ++j) {
      tr.input("A", {i, j});
      tr.input("C", {i, j});
      tr.input("Temp", {i, j});
    }
  for (long long i = 0; i < N; ++i) {
    for (long long j = 0; j < N; ++j)
      for (long long k = 0; k < N; ++k) {
        auto s = Trace::name("S1", {i, j, k});
        tr.read(s, "Temp", {i, j});
        tr.read(s, "A", {i, k});
        tr.read(s, "A", {k, j});
        tr.write(s, "Temp", {i, j});
      }
    for (long long j = 0; j < N; ++j) {
      auto s = Trace::name("S2", {i, j});
      tr.read(s, "Temp", {i, j});
      tr.write(s, "Temp", {i, j});
    }
    for (long long j = 0; j < N; ++j) {
      auto s = Trace::name("S3", {i, j});
      tr.read(s, "C", {i, j});
      tr.read(s, "Temp", {i, j});
      tr.write(s, "C", {i, j});
    }
  }
  return tr;
}

inline Trace seidel(long long T, long long N) {
  Trace tr;
  for (long long i = 0; i < N; ++i)
    for (long long j = 0; j < N; ++j) tr.input("A", {i, j});
  for (long long t = 0; t < T; ++t)
    for (long long i = 1; i < N - 1; ++i)
      for (long long j = 1; j < N - 1; ++j) {
        auto s = Trace::name("S4", {t, i, j});
        tr.read(s, "A", {i - 1, j});
        tr.read(s, "A", {i, j - 1});
        tr.read(s, "A", {i, j});
        tr.read(s, "A", {i + 1, j});
        tr.read(s, "A", {i, j + 1});
        tr.write(s, "A", {i, j});
      }
  return tr;
}

// Reads of the particle data only; the force accumulation is not modelled.
inline Trace nbody(long long N) {
  Trace tr;
  for (long long i = 0; i < N; ++i) {
    tr.input("pos", {i});
    tr.input("mass", {i});
  }
  for (long long i = 0; i < N; ++i)
    for (long long j = 0; j < N; ++j) {
      if (i == j) continue;
      auto s = Trace::name("S", {i, j});
      for (long long p : {i, j}) {
        tr.read(s, "pos", {p});
        tr.read(s, "mass", {p});
      }
      tr.vertices.insert(s);
    }
  return tr;
}

}  // namespace loops
