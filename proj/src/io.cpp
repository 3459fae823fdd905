#include "napoly/io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>

#include <json.hpp>

namespace napoly {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw ParseError("unknown field \"" + key + "\" in " + ctx);
    }
}

const ordered_json& field(const ordered_json& obj, const char* key,
                          const std::string& ctx) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError("missing field \"" + std::string(key) + "\" in " + ctx);
    return *it;
}

int64_t get_int(const ordered_json& obj, const char* key, const std::string& ctx,
                int64_t lo = std::numeric_limits<int32_t>::min(),
                int64_t hi = std::numeric_limits<int32_t>::max()) {
    const ordered_json& v = field(obj, key, ctx);
    if (!v.is_number_integer())
        throw ParseError("field \"" + std::string(key) + "\" in " + ctx +
                         " must be an integer");
    const auto x = v.get<int64_t>();
    if (x < lo || x > hi)
        throw ParseError("field \"" + std::string(key) + "\" in " + ctx +
                         " out of range [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    return x;
}

bool get_bool(const ordered_json& obj, const char* key, const std::string& ctx) {
    const ordered_json& v = field(obj, key, ctx);
    if (!v.is_boolean())
        throw ParseError("field \"" + std::string(key) + "\" in " + ctx +
                         " must be a boolean");
    return v.get<bool>();
}

std::string get_string(const ordered_json& obj, const char* key,
                       const std::string& ctx) {
    const ordered_json& v = field(obj, key, ctx);
    if (!v.is_string())
        throw ParseError("field \"" + std::string(key) + "\" in " + ctx +
                         " must be a string");
    return v.get<std::string>();
}

// Symbol classes travel as strings whose code points are the member bytes.
// Bytes above 0x7F need the two-byte UTF-8 form.
std::string encode_symbols(const SymbolClass& cls) {
    std::string s;
    for (int w = 0; w < 4; ++w) {
        uint64_t bits = cls.word(w);
        while (bits) {
            const int b = __builtin_ctzll(bits);
            bits &= bits - 1;
            const auto cp = static_cast<uint32_t>(w * 64 + b);
            if (cp < 0x80) {
                s.push_back(static_cast<char>(cp));
            } else {
                s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
                s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
            }
        }
    }
    return s;
}

SymbolClass decode_symbols(const std::string& s, const std::string& ctx) {
    SymbolClass cls;
    for (size_t i = 0; i < s.size();) {
        const auto b0 = static_cast<uint8_t>(s[i]);
        uint32_t cp;
        if (b0 < 0x80) {
            cp = b0;
            i += 1;
        } else if ((b0 & 0xE0) == 0xC0 && i + 1 < s.size() &&
                   (static_cast<uint8_t>(s[i + 1]) & 0xC0) == 0x80) {
            cp = (static_cast<uint32_t>(b0 & 0x1F) << 6) |
                 (static_cast<uint8_t>(s[i + 1]) & 0x3F);
            i += 2;
        } else {
            throw ParseError("symbols string in " + ctx +
                             " holds a code point above U+00FF");
        }
        if (cp > 0xFF)
            throw ParseError("symbols string in " + ctx +
                             " holds a code point above U+00FF");
        cls.insert(static_cast<uint8_t>(cp));
    }
    return cls;
}

}  // namespace

WeightedAutomaton parse_wfa_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("automaton file must hold a JSON object");
    check_keys(j, {"states", "start", "accepts", "transitions"}, "automaton");

    WeightedAutomaton a;
    a.num_states =
        static_cast<StateId>(get_int(j, "states", "automaton", 0));
    a.start = static_cast<StateId>(get_int(j, "start", "automaton"));

    const ordered_json& accepts = field(j, "accepts", "automaton");
    if (!accepts.is_array())
        throw ParseError("field \"accepts\" in automaton must be an array");
    for (const auto& v : accepts) {
        if (!v.is_number_integer())
            throw ParseError("accept states must be integers");
        a.accepts.push_back(static_cast<StateId>(v.get<int64_t>()));
    }
    std::sort(a.accepts.begin(), a.accepts.end());
    a.accepts.erase(std::unique(a.accepts.begin(), a.accepts.end()), a.accepts.end());

    const ordered_json& transitions = field(j, "transitions", "automaton");
    if (!transitions.is_array())
        throw ParseError("field \"transitions\" in automaton must be an array");
    size_t idx = 0;
    for (const auto& tj : transitions) {
        const std::string ctx = "transition " + std::to_string(idx++);
        if (!tj.is_object()) throw ParseError(ctx + " must be an object");
        check_keys(tj, {"from", "to", "symbols", "weight"}, ctx);
        Transition t;
        t.from = static_cast<StateId>(get_int(tj, "from", ctx));
        t.to = static_cast<StateId>(get_int(tj, "to", ctx));
        t.weight = static_cast<Weight>(get_int(tj, "weight", ctx));
        const std::string symbols = get_string(tj, "symbols", ctx);
        if (symbols != "EPSILON") t.label = decode_symbols(symbols, ctx);
        a.transitions.push_back(std::move(t));
    }

    a.alphabet = a.label_union();
    try {
        a.check();
    } catch (const InvalidArgumentError& e) {
        throw ParseError(e.what());
    }
    return a;
}

std::string wfa_to_json(const WeightedAutomaton& wfa) {
    ordered_json j;
    j["states"] = wfa.num_states;
    j["start"] = wfa.start;
    j["accepts"] = wfa.accepts;
    j["transitions"] = ordered_json::array();
    for (const auto& t : wfa.transitions) {
        ordered_json tj;
        tj["from"] = t.from;
        tj["to"] = t.to;
        tj["symbols"] = t.label ? encode_symbols(*t.label) : "EPSILON";
        tj["weight"] = t.weight;
        j["transitions"].push_back(std::move(tj));
    }
    return j.dump(2) + "\n";
}

PlacedDesign parse_design_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("design file must hold a JSON object");
    check_keys(j, {"format", "params", "mode", "exact", "start_cell", "cells",
                   "placement"},
               "design");
    if (get_string(j, "format", "design") != "napoly-design-v1")
        throw ParseError("unsupported design format tag");

    PlacedDesign d;
    const ordered_json& params = field(j, "params", "design");
    if (!params.is_object())
        throw ParseError("field \"params\" in design must be an object");
    check_keys(params, {"array_size", "fanout"}, "params");
    d.params.array_size =
        static_cast<CellId>(get_int(params, "array_size", "params", 0));
    d.params.fanout = static_cast<int32_t>(get_int(params, "fanout", "params", 0));
    try {
        d.params.check();
    } catch (const InvalidArgumentError& e) {
        throw ParseError(e.what());
    }

    const auto mode = score_mode_from_string(get_string(j, "mode", "design"));
    if (!mode) throw ParseError("field \"mode\" in design must be \"local\" or \"global\"");
    d.mode = *mode;
    d.exact = get_bool(j, "exact", "design");
    d.start_cell = static_cast<CellId>(
        get_int(j, "start_cell", "design", 0, d.params.array_size - 1));

    const ordered_json& cells = field(j, "cells", "design");
    if (!cells.is_array())
        throw ParseError("field \"cells\" in design must be an array");
    if (static_cast<CellId>(cells.size()) != d.params.array_size)
        throw ParseError("design lists " + std::to_string(cells.size()) +
                         " cells, params say " + std::to_string(d.params.array_size));
    size_t idx = 0;
    for (const auto& cj : cells) {
        const std::string ctx = "cell " + std::to_string(idx++);
        if (!cj.is_object()) throw ParseError(ctx + " must be an object");
        check_keys(cj, {"symbols", "weight", "start_bit", "accept_bit",
                        "start_connected", "out"},
                   ctx);
        SteCell cell;
        cell.symbols = SymbolClass::from_hex(get_string(cj, "symbols", ctx));
        cell.weight = static_cast<Weight>(get_int(cj, "weight", ctx));
        cell.start_bit = get_bool(cj, "start_bit", ctx);
        cell.accept_bit = get_bool(cj, "accept_bit", ctx);
        cell.start_connected = get_bool(cj, "start_connected", ctx);
        const ordered_json& out = field(cj, "out", ctx);
        if (!out.is_array())
            throw ParseError("field \"out\" in " + ctx + " must be an array");
        for (const auto& v : out) {
            if (!v.is_number_integer())
                throw ParseError("out targets in " + ctx + " must be integers");
            cell.out.push_back(static_cast<CellId>(v.get<int64_t>()));
        }
        d.cells.push_back(std::move(cell));
    }

    const ordered_json& placement = field(j, "placement", "design");
    if (!placement.is_array())
        throw ParseError("field \"placement\" in design must be an array");
    for (const auto& v : placement) {
        if (!v.is_number_integer())
            throw ParseError("placement entries must be integers");
        const auto c = v.get<int64_t>();
        if (c < 0 || c >= d.params.array_size)
            throw ParseError("placement entry " + std::to_string(c) +
                             " outside the cell array");
        d.node_cell.push_back(static_cast<CellId>(c));
    }

    const std::vector<ValidationIssue> issues = validate(d);
    if (!issues.empty()) {
        std::string msg = "design violates overlay invariants:";
        for (const auto& issue : issues)
            msg += "\n  [" + to_string(issue.kind) + "] " + issue.detail;
        throw ParseError(msg);
    }
    try {
        d.rebuild_tables();
    } catch (const InvalidArgumentError& e) {
        throw ParseError(e.what());
    }
    return d;
}

std::string design_to_json(const PlacedDesign& design) {
    ordered_json j;
    j["format"] = "napoly-design-v1";
    j["params"] = {{"array_size", design.params.array_size},
                   {"fanout", design.params.fanout}};
    j["mode"] = to_string(design.mode);
    j["exact"] = design.exact;
    j["start_cell"] = design.start_cell;
    j["cells"] = ordered_json::array();
    for (const SteCell& cell : design.cells) {
        ordered_json cj;
        cj["symbols"] = cell.symbols.to_hex();
        cj["weight"] = cell.weight;
        cj["start_bit"] = cell.start_bit;
        cj["accept_bit"] = cell.accept_bit;
        cj["start_connected"] = cell.start_connected;
        cj["out"] = cell.out;
        j["cells"].push_back(std::move(cj));
    }
    j["placement"] = design.node_cell;
    return j.dump(2) + "\n";
}

WeightedAutomaton load_wfa(const std::string& path) {
    return parse_wfa_json(read_file(path));
}

void save_wfa(const WeightedAutomaton& wfa, const std::string& path) {
    write_file(path, wfa_to_json(wfa));
}

PlacedDesign load_design(const std::string& path) {
    return parse_design_json(read_file(path));
}

void save_design(const PlacedDesign& design, const std::string& path) {
    write_file(path, design_to_json(design));
}

std::vector<std::string> read_sequences(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != '>') out.push_back(std::move(line));
        pos = end + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path);
    return content;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed on " + path);
}

}  // namespace napoly
