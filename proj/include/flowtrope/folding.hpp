#ifndef FLOWTROPE_FOLDING_HPP_
#define FLOWTROPE_FOLDING_HPP_

// Stallings core graphs of finitely generated subgroups of free groups.
//
// Edges are stored once, in the direction of their generator; walking an
// edge backwards reads the inverse generator. A graph is folded when no
// vertex has two outgoing, or two incoming, edges with the same label.
//
// An endomorphism h of F_n is onto exactly when folding the bouquet of its
// generator images yields the rose with n petals, and since F_n is Hopfian
// an onto endomorphism is an automorphism.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "flowtrope/error.hpp"
#include "flowtrope/freegroup.hpp"

namespace flowtrope {

  struct Edge {
    std::size_t   source;
    std::size_t   target;
    std::uint32_t label;

    friend auto operator<=>(Edge const&, Edge const&) = default;
  };

  //! A connected, based graph with edges labelled by generators of F_rank.
  class LabeledGraph {
   public:
    LabeledGraph(std::size_t       rank,
                 std::size_t       vertex_count,
                 std::vector<Edge> edges,
                 std::size_t       basepoint)
        : _rank(rank),
          _vertex_count(vertex_count),
          _edges(std::move(edges)),
          _basepoint(basepoint) {
      if (_basepoint >= _vertex_count) {
        throw Error(ErrorKind::BadIndex, "basepoint is not a vertex");
      }
      for (auto const& e : _edges) {
        if (e.source >= _vertex_count || e.target >= _vertex_count) {
          throw Error(ErrorKind::BadIndex, "edge endpoint is not a vertex");
        }
        if (e.label >= _rank) {
          throw Error(ErrorKind::BadIndex, "edge label out of range");
        }
      }
      if (!connected()) {
        throw Error(ErrorKind::ValidationError, "graph is not connected");
      }
    }

    [[nodiscard]] std::size_t rank() const noexcept {
      return _rank;
    }
    [[nodiscard]] std::size_t vertex_count() const noexcept {
      return _vertex_count;
    }
    [[nodiscard]] std::size_t edge_count() const noexcept {
      return _edges.size();
    }
    [[nodiscard]] std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] std::size_t basepoint() const noexcept {
      return _basepoint;
    }

    [[nodiscard]] bool is_folded() const {
      std::vector<std::tuple<std::size_t, std::uint32_t, bool>> keys;
      keys.reserve(2 * _edges.size());
      for (auto const& e : _edges) {
        keys.emplace_back(e.source, e.label, false);
        keys.emplace_back(e.target, e.label, true);
      }
      std::sort(keys.begin(), keys.end());
      return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
    }

    //! One vertex carrying one loop per generator.
    [[nodiscard]] bool is_rose() const {
      if (_vertex_count != 1 || _edges.size() != _rank) {
        return false;
      }
      std::vector<bool> seen(_rank, false);
      for (auto const& e : _edges) {
        if (seen[e.label]) {
          return false;
        }
        seen[e.label] = true;
      }
      return true;
    }

    friend bool operator==(LabeledGraph const& x, LabeledGraph const& y) {
      return x._rank == y._rank && x._vertex_count == y._vertex_count
             && x._basepoint == y._basepoint && x._edges == y._edges;
    }

   private:
    [[nodiscard]] bool connected() const {
      std::vector<std::vector<std::size_t>> adj(_vertex_count);
      for (auto const& e : _edges) {
        adj[e.source].push_back(e.target);
        adj[e.target].push_back(e.source);
      }
      std::vector<bool>        seen(_vertex_count, false);
      std::vector<std::size_t> stack{_basepoint};
      seen[_basepoint]  = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
          if (!seen[w]) {
            seen[w] = true;
            ++count;
            stack.push_back(w);
          }
        }
      }
      return count == _vertex_count;
    }

    std::size_t       _rank;
    std::size_t       _vertex_count;
    std::vector<Edge> _edges;
    std::size_t       _basepoint;
  };

  namespace detail {

    // Working copy for folding. Optionally every edge carries a tag in the
    // domain free group such that along any closed path at the basepoint
    // h(product of tags) equals the product of labels; folding keeps this
    // true by re-gauging the vertex that disappears.
    class Folder {
     public:
      Folder(std::size_t rank, std::size_t vertices, std::size_t basepoint)
          : _rank(rank),
            _incident(vertices),
            _vertex_alive(vertices, 1),
            _base(basepoint) {}

      void add_edge(std::size_t src, std::size_t dst, std::uint32_t label,
                    std::optional<GroupWord> tag = std::nullopt) {
        std::size_t id = _edges.size();
        _tagged        = _tagged || tag.has_value();
        _edges.push_back({src, dst, label, true, tag.value_or(GroupWord())});
        _incident[src].push_back(id);
        if (dst != src) {
          _incident[dst].push_back(id);
        }
      }

      std::size_t add_vertex() {
        _incident.emplace_back();
        _vertex_alive.push_back(1);
        return _incident.size() - 1;
      }

      void run_fifo() {
        std::deque<std::size_t> queue;
        std::vector<char>       queued(_incident.size(), 1);
        for (std::size_t v = 0; v < _incident.size(); ++v) {
          queue.push_back(v);
        }
        while (!queue.empty()) {
          std::size_t v = queue.front();
          queue.pop_front();
          queued[v] = 0;
          if (!_vertex_alive[v]) {
            continue;
          }
          auto clash = find_clash(v);
          if (!clash) {
            continue;
          }
          std::size_t keep = fold_pair(v, *clash);
          for (std::size_t w : {v, keep}) {
            if (_vertex_alive[w] && !queued[w]) {
              queued[w] = 1;
              queue.push_back(w);
            }
          }
        }
      }

      template <typename Rng>
      void run_random(Rng& rng) {
        for (;;) {
          std::vector<std::pair<std::size_t, Clash>> all;
          for (std::size_t v = 0; v < _incident.size(); ++v) {
            if (_vertex_alive[v]) {
              for (auto const& c : all_clashes(v)) {
                all.emplace_back(v, c);
              }
            }
          }
          if (all.empty()) {
            return;
          }
          std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
          auto const& [v, c] = all[pick(rng)];
          fold_pair(v, c);
        }
      }

      void trim() {
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t v = 0; v < _incident.size(); ++v) {
            if (!_vertex_alive[v] || v == _base) {
              continue;
            }
            compact(v);
            std::size_t degree = 0;
            for (std::size_t id : _incident[v]) {
              degree += (_edges[id].src == _edges[id].dst) ? 2 : 1;
            }
            if (degree <= 1) {
              for (std::size_t id : _incident[v]) {
                _edges[id].alive = false;
              }
              _incident[v].clear();
              _vertex_alive[v] = 0;
              changed          = true;
            }
          }
        }
      }

      struct Result {
        LabeledGraph           graph;
        std::vector<GroupWord> tags;  // aligned with graph.edges()
      };

      // Renumbers vertices breadth first from the basepoint, visiting the
      // edges at each vertex by (label, outgoing before incoming). On a
      // folded graph this numbering is canonical.
      [[nodiscard]] Result result() {
        constexpr std::size_t    none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> number(_incident.size(), none);
        std::deque<std::size_t>  queue{_base};
        number[_base]     = 0;
        std::size_t count = 1;
        while (!queue.empty()) {
          std::size_t v = queue.front();
          queue.pop_front();
          compact(v);
          std::vector<std::tuple<std::uint32_t, int, std::size_t>> order;
          for (std::size_t id : _incident[v]) {
            auto const& e = _edges[id];
            if (e.src == v) {
              order.emplace_back(e.label, 0, e.dst);
            }
            if (e.dst == v) {
              order.emplace_back(e.label, 1, e.src);
            }
          }
          std::sort(order.begin(), order.end());
          for (auto const& [label, dir, w] : order) {
            if (number[w] == none) {
              number[w] = count++;
              queue.push_back(w);
            }
          }
        }
        std::vector<std::pair<Edge, GroupWord>> out;
        for (auto const& e : _edges) {
          if (e.alive) {
            out.emplace_back(Edge{number[e.src], number[e.dst], e.label}, e.tag);
          }
        }
        std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
          return x.first < y.first;
        });
        std::vector<Edge>      edges;
        std::vector<GroupWord> tags;
        for (auto& [e, t] : out) {
          edges.push_back(e);
          tags.push_back(std::move(t));
        }
        return {LabeledGraph(_rank, count, std::move(edges), 0), std::move(tags)};
      }

     private:
      struct WorkEdge {
        std::size_t   src;
        std::size_t   dst;
        std::uint32_t label;
        bool          alive;
        GroupWord     tag;
      };

      struct Clash {
        std::size_t first;
        std::size_t second;
        bool        outgoing;
      };

      void compact(std::size_t v) {
        auto& inc = _incident[v];
        std::sort(inc.begin(), inc.end());
        inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
        inc.erase(std::remove_if(inc.begin(), inc.end(),
                                 [&](std::size_t id) { return !_edges[id].alive; }),
                  inc.end());
      }

      std::vector<Clash> all_clashes(std::size_t v) {
        compact(v);
        std::vector<Clash> out;
        auto const&        inc = _incident[v];
        for (std::size_t i = 0; i < inc.size(); ++i) {
          for (std::size_t j = i + 1; j < inc.size(); ++j) {
            auto const& x = _edges[inc[i]];
            auto const& y = _edges[inc[j]];
            if (x.label != y.label) {
              continue;
            }
            if (x.src == v && y.src == v) {
              out.push_back({inc[i], inc[j], true});
            }
            if (x.dst == v && y.dst == v) {
              out.push_back({inc[i], inc[j], false});
            }
          }
        }
        return out;
      }

      std::optional<Clash> find_clash(std::size_t v) {
        auto all = all_clashes(v);
        if (all.empty()) {
          return std::nullopt;
        }
        return all.front();
      }

      // Identifies the two clashing edges at v and their far endpoints.
      // Returns the surviving far endpoint.
      std::size_t fold_pair(std::size_t v, Clash const& c) {
        (void) v;
        auto& e1 = _edges[c.first];
        auto& e2 = _edges[c.second];
        std::size_t t1 = c.outgoing ? e1.dst : e1.src;
        std::size_t t2 = c.outgoing ? e2.dst : e2.src;
        std::size_t keep = t1;
        if (t1 != t2) {
          bool        drop_second = t2 != _base;
          std::size_t drop        = drop_second ? t2 : t1;
          keep                    = drop_second ? t1 : t2;
          if (_tagged) {
            GroupWord const& a = e1.tag;
            GroupWord const& b = e2.tag;
            GroupWord        g;
            if (c.outgoing) {
              g = drop_second ? b.inverse() * a : a.inverse() * b;
            } else {
              g = drop_second ? b * a.inverse() : a * b.inverse();
            }
            gauge(drop, g);
          }
          merge(drop, keep);
        }
        _edges[c.second].alive = false;
        return keep;
      }

      void gauge(std::size_t z, GroupWord const& g) {
        compact(z);
        GroupWord const g_inv = g.inverse();
        for (std::size_t id : _incident[z]) {
          auto&     e = _edges[id];
          GroupWord t = e.src == z ? g_inv * e.tag : e.tag;
          if (e.dst == z) {
            t *= g;
          }
          e.tag = std::move(t);
        }
      }

      void merge(std::size_t drop, std::size_t keep) {
        for (std::size_t id : _incident[drop]) {
          auto& e = _edges[id];
          if (!e.alive) {
            continue;
          }
          if (e.src == drop) {
            e.src = keep;
          }
          if (e.dst == drop) {
            e.dst = keep;
          }
          _incident[keep].push_back(id);
        }
        _incident[drop].clear();
        _vertex_alive[drop] = 0;
      }

      std::size_t                           _rank;
      std::vector<WorkEdge>                 _edges;
      std::vector<std::vector<std::size_t>> _incident;
      std::vector<char>                     _vertex_alive;
      std::size_t                           _base;
      bool                                  _tagged = false;
    };

    inline Folder folder_from(LabeledGraph const& g) {
      Folder f(g.rank(), g.vertex_count(), g.basepoint());
      for (auto const& e : g.edges()) {
        f.add_edge(e.source, e.target, e.label);
      }
      return f;
    }

    // Subdivided petal for each word; with `domain_rank` set, the last edge
    // of petal j carries the tag e_j (or its inverse when walked backwards).
    inline Folder bouquet_folder(std::span<std::vector<Letter> const> words,
                                 std::size_t                          rank,
                                 std::optional<std::size_t> domain_rank) {
      Folder f(rank, 1, 0);
      for (std::size_t j = 0; j < words.size(); ++j) {
        auto const& w    = words[j];
        std::size_t prev = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          Letter l = w[i];
          if (l.gen >= rank) {
            throw Error(ErrorKind::RankMismatch,
                        "letter outside rank " + std::to_string(rank));
          }
          bool        last = i + 1 == w.size();
          std::size_t next = last ? 0 : f.add_vertex();
          std::optional<GroupWord> tag;
          if (domain_rank) {
            GroupWord t(*domain_rank);
            if (last) {
              t.push_reduced({static_cast<std::uint32_t>(j), l.inverse});
            }
            tag = std::move(t);
          }
          if (l.inverse) {
            f.add_edge(next, prev, l.gen, std::move(tag));
          } else {
            f.add_edge(prev, next, l.gen, std::move(tag));
          }
          prev = next;
        }
      }
      return f;
    }

    inline std::vector<std::vector<Letter>> letters_of(
        std::span<GroupWord const> words,
        std::size_t                rank) {
      std::vector<std::vector<Letter>> out;
      for (auto const& w : words) {
        if (w.rank() != rank) {
          throw Error(ErrorKind::RankMismatch,
                      "word of rank " + std::to_string(w.rank())
                          + " in a bouquet of rank " + std::to_string(rank));
        }
        out.push_back(w.letters());
      }
      return out;
    }

  }  // namespace detail

  //! Wedge of subdivided loops at the basepoint, one per word. The words may
  //! be unreduced.
  inline LabeledGraph bouquet(std::span<std::vector<Letter> const> words,
                              std::size_t                          rank) {
    return detail::bouquet_folder(words, rank, std::nullopt).result().graph;
  }

  inline LabeledGraph bouquet(std::span<GroupWord const> words, std::size_t rank) {
    auto letters = detail::letters_of(words, rank);
    return bouquet(std::span<std::vector<Letter> const>(letters), rank);
  }

  //! The folded core: folds until no clash remains (first-in first-out
  //! worklist), then trims hanging trees away from the basepoint.
  inline LabeledGraph fold(LabeledGraph const& g) {
    auto f = detail::folder_from(g);
    f.run_fifo();
    f.trim();
    return f.result().graph;
  }

  //! Same as fold, but each step picks a uniformly random clash. Used to test
  //! that the folded core does not depend on the fold order.
  inline LabeledGraph fold_randomized(LabeledGraph const& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto            f = detail::folder_from(g);
    f.run_random(rng);
    f.trim();
    return f.result().graph;
  }

  //! Rank of the subgroup a folded graph represents: E - V + 1 of its core.
  inline std::size_t subgroup_rank(LabeledGraph const& g) {
    if (!g.is_folded()) {
      throw Error(ErrorKind::NotFolded, "subgroup_rank needs a folded graph");
    }
    auto f = detail::folder_from(g);
    f.trim();
    auto core = f.result().graph;
    return core.edge_count() + 1 - core.vertex_count();
  }

  //! The folded core of the image subgroup of h.
  inline LabeledGraph image_core(GroupHom const& h) {
    return fold(bouquet(std::span<GroupWord const>(h.images()),
                        h.codomain_rank()));
  }

  inline bool is_invertible(GroupHom const& h) {
    if (h.domain_rank() != h.codomain_rank()) {
      throw Error(ErrorKind::RankMismatch,
                  "invertibility needs an endomorphism");
    }
    return image_core(h).is_rose();
  }

  //! For an automorphism, reads the inverse off the folded rose: each petal
  //! carries the domain word mapping onto its generator. Returns nullopt when
  //! h is not invertible. The result is checked on both sides.
  inline std::optional<GroupHom> inverse_witness(GroupHom const& h) {
    if (h.domain_rank() != h.codomain_rank()) {
      throw Error(ErrorKind::RankMismatch,
                  "invertibility needs an endomorphism");
    }
    std::size_t const n       = h.codomain_rank();
    auto              letters = detail::letters_of(h.images(), n);
    auto f = detail::bouquet_folder(letters, n, h.domain_rank());
    f.run_fifo();
    f.trim();
    auto [graph, tags] = f.result();
    if (!graph.is_rose()) {
      return std::nullopt;
    }
    std::vector<GroupWord> images(n, GroupWord(n));
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
      images[graph.edges()[i].label] = tags[i];
    }
    GroupHom inv(n, std::move(images));
    if (!(compose_hom(h, inv) == identity_hom(n))
        || !(compose_hom(inv, h) == identity_hom(n))) {
      return std::nullopt;
    }
    return inv;
  }

}  // namespace flowtrope

#endif  // FLOWTROPE_FOLDING_HPP_
