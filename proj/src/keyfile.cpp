#include "wm/keyfile.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "wm/error.hpp"

namespace wm {

namespace {

constexpr int kFormatVersion = 1;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_real(const std::string& tok) {
    try {
        size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::format, "key: bad numeric token '" + tok + "'");
    }
}

long parse_int(const std::string& tok) {
    try {
        size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::format, "key: bad integer token '" + tok + "'");
    }
}

} // namespace

std::string serialize_key(const WatermarkKey& key) {
    std::ostringstream out;
    out << "cwmkey " << kFormatVersion << "\n";
    out << "alpha " << fmt_real(key.alpha) << "\n";
    out << "blocks " << key.block_count << "\n";
    out << "side " << key.image_side << "\n";
    out << "y_warning " << (key.y_monotone_warning ? 1 : 0) << "\n";
    out << "s";
    for (const double v : key.s_prefix) out << " " << fmt_real(v);
    out << "\n";
    for (size_t i = 0; i < key.blocks.size(); ++i) {
        out << "c" << (i + 1);
        for (const double v : key.blocks[i].c) out << " " << fmt_real(v);
        out << "\n";
    }
    return out.str();
}

WatermarkKey parse_key(const std::string& text, bool require_blocks) {
    std::istringstream in(text);
    std::string line;

    std::map<std::string, std::vector<std::string>> fields;
    std::vector<std::vector<std::string>> block_lines;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string name;
        ls >> name;
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (first) {
            if (name != "cwmkey" || toks.size() != 1 || parse_int(toks[0]) != kFormatVersion)
                fail(ErrorCode::format, "key: not a cwmkey version-1 file");
            first = false;
            continue;
        }
        if (name.size() > 1 && name[0] == 'c' && std::isdigit(static_cast<unsigned char>(name[1]))) {
            const long idx = parse_int(name.substr(1));
            if (idx != static_cast<long>(block_lines.size()) + 1)
                fail(ErrorCode::format, "key: block lines out of order at " + name);
            block_lines.push_back(toks);
        } else {
            if (!fields.emplace(name, toks).second)
                fail(ErrorCode::format, "key: duplicate field '" + name + "'");
        }
    }
    if (first) fail(ErrorCode::format, "key: empty file");

    auto need = [&](const char* name) -> const std::vector<std::string>& {
        const auto it = fields.find(name);
        if (it == fields.end()) fail(ErrorCode::format, std::string("key: missing field '") + name + "'");
        return it->second;
    };
    auto scalar = [&](const char* name) -> const std::string& {
        const auto& toks = need(name);
        if (toks.size() != 1) fail(ErrorCode::format, std::string("key: field '") + name + "' wants one value");
        return toks[0];
    };

    WatermarkKey key;
    key.alpha = parse_real(scalar("alpha"));
    key.block_count = static_cast<int>(parse_int(scalar("blocks")));
    key.image_side = static_cast<int>(parse_int(scalar("side")));
    key.y_monotone_warning = parse_int(scalar("y_warning")) != 0;

    if (key.alpha <= 0.0) fail(ErrorCode::format, "key: alpha must be positive");
    if (key.block_count < 1) fail(ErrorCode::format, "key: block count must be >= 1");
    if (key.image_side < 4 * key.block_count) fail(ErrorCode::format, "key: side too small for blocks");

    const auto& s_toks = need("s");
    if (s_toks.size() != static_cast<size_t>(4 * key.block_count))
        fail(ErrorCode::format, "key: expected 4k singular values");
    for (const auto& tok : s_toks) key.s_prefix.push_back(parse_real(tok));

    if (require_blocks) {
        if (block_lines.size() != static_cast<size_t>(key.block_count))
            fail(ErrorCode::format, "key: expected one c-line per block");
        for (const auto& toks : block_lines) {
            if (toks.size() != 4) fail(ErrorCode::format, "key: block lines carry four values");
            CoefficientBlock b;
            for (int i = 0; i < 4; ++i) b.c[static_cast<size_t>(i)] = parse_real(toks[static_cast<size_t>(i)]);
            key.blocks.push_back(b);
        }
    }
    return key;
}

void write_key(const WatermarkKey& key, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    out << serialize_key(key);
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

WatermarkKey read_key(const std::string& path, bool require_blocks) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_key(text.str(), require_blocks);
}

} // namespace wm
