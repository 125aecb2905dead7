#pragma once

// Plain-text input formats. All four are line-based, blank lines are
// skipped and '#' starts a comment:
//   graph    LABEL LABEL WEIGHT      one edge per line
//   measure  LABEL MASS              omitted vertices carry zero
//   cuts     LAMBDA : LABEL LABEL …  one weighted subset per line
//   map      SOURCE TARGET           one vertex image per line
// Numbers are integers, fractions "p/q", or decimals. Parse errors carry
// the 1-based line number.

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "cuts.hpp"
#include "graph.hpp"
#include "measure.hpp"

namespace kantor {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

inline Rational parse_number(const std::string& text, std::size_t line) {
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace detail

inline WeightedGraph read_graph(std::istream& in) {
    GraphBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 3)
            throw ParseError("expected 'LABEL LABEL WEIGHT'", line_no);
        builder.add_edge(tokens[0], tokens[1], detail::parse_number(tokens[2], line_no));
        any = true;
    }
    if (!any) throw ParseError("graph file lists no edges");
    return std::move(builder).build();
}

struct MeasureLine {
    std::string label;
    Rational mass;
    std::size_t line;
};

inline std::vector<MeasureLine> read_measure_lines(std::istream& in) {
    std::vector<MeasureLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) throw ParseError("expected 'LABEL MASS'", line_no);
        for (const MeasureLine& seen : out)
            if (seen.label == tokens[0])
                throw ParseError("vertex '" + tokens[0] + "' listed twice", line_no);
        out.push_back({tokens[0], detail::parse_number(tokens[1], line_no), line_no});
    }
    return out;
}

// Dense mass vector over the graph's vertices; unknown labels are parse
// errors at their line.
inline std::vector<Rational> read_measure(std::istream& in, const WeightedGraph& g) {
    std::vector<Rational> mass(g.vertex_count(), Rational(0));
    for (MeasureLine& entry : read_measure_lines(in)) {
        auto v = g.find_vertex(entry.label);
        if (!v) throw ParseError("unknown vertex '" + entry.label + "'", entry.line);
        mass[*v] = std::move(entry.mass);
    }
    return mass;
}

struct CutLine {
    Rational lambda;
    std::vector<std::string> labels;
    std::size_t line;
};

inline std::vector<CutLine> read_cut_lines(std::istream& in) {
    std::vector<CutLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 3 || tokens[1] != ":")
            throw ParseError("expected 'LAMBDA : LABEL LABEL ...'", line_no);
        CutLine entry{detail::parse_number(tokens[0], line_no), {}, line_no};
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            for (const std::string& seen : entry.labels)
                if (seen == tokens[i])
                    throw ParseError("vertex '" + tokens[i] + "' listed twice in one cut",
                                     line_no);
            entry.labels.push_back(tokens[i]);
        }
        out.push_back(std::move(entry));
    }
    if (out.empty()) throw ParseError("cut file lists no subsets");
    return out;
}

inline CutFamily read_cut_family(std::istream& in, const WeightedGraph& g) {
    if (g.vertex_count() > 64)
        throw CapacityError("cut subsets are stored as 64-bit masks; vertex count " +
                                std::to_string(g.vertex_count()) + " exceeds that",
                            static_cast<unsigned long long>(g.vertex_count()));
    std::vector<CutEntry> entries;
    for (const CutLine& line : read_cut_lines(in)) {
        CutEntry e{0, line.lambda};
        for (const std::string& label : line.labels) {
            auto v = g.find_vertex(label);
            if (!v) throw ParseError("unknown vertex '" + label + "'", line.line);
            e.members |= std::uint64_t(1) << *v;
        }
        entries.push_back(std::move(e));
    }
    return CutFamily(g.vertex_count(), std::move(entries));
}

struct MapLine {
    std::string source, target;
    std::size_t line;
};

inline std::vector<MapLine> read_map_lines(std::istream& in) {
    std::vector<MapLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) throw ParseError("expected 'SOURCE_LABEL TARGET_LABEL'", line_no);
        for (const MapLine& seen : out)
            if (seen.source == tokens[0])
                throw ParseError("source vertex '" + tokens[0] + "' mapped twice", line_no);
        out.push_back({tokens[0], tokens[1], line_no});
    }
    if (out.empty()) throw ParseError("map file lists no pairs");
    return out;
}

}  // namespace kantor
