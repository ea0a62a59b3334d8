#include "soko/level.hpp"

#include <fstream>
#include <sstream>

namespace soko {
namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

Level parse_xsb(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    while (!lines.empty() && blank(lines.front())) lines.erase(lines.begin());
    while (!lines.empty() && blank(lines.back())) lines.pop_back();
    if (lines.empty()) throw ParseError("empty level");

    Level lv;
    lv.height = int(lines.size());
    for (const auto& line : lines) lv.width = std::max(lv.width, int(line.size()));
    if (lv.width > 64) throw ParseError("level wider than 64 columns");
    if (lv.height > 100) throw ParseError("level taller than 100 rows");
    if (lv.width < 3 || lv.height < 3) throw ParseError("level too small");

    lv.walls = BitRows(lv.height);
    lv.floor = BitRows(lv.height);
    lv.targets = BitRows(lv.height);
    lv.start_boxes = BitRows(lv.height);

    int players = 0;
    for (int y = 0; y < lv.height; y++) {
        const std::string& line = lines[size_t(y)];
        for (int x = 0; x < lv.width; x++) {
            char c = x < int(line.size()) ? line[size_t(x)] : ' ';
            Square s(x, y);
            switch (c) {
                case '#': lv.walls.set(s); break;
                case ' ': break;
                case '.': lv.targets.set(s); break;
                case '$': lv.start_boxes.set(s); break;
                case '*':
                    lv.start_boxes.set(s);
                    lv.targets.set(s);
                    break;
                case '@':
                    lv.start_player = s;
                    players++;
                    break;
                case '+':
                    lv.start_player = s;
                    lv.targets.set(s);
                    players++;
                    break;
                default:
                    throw ParseError(std::string("unknown symbol '") + c + "'");
            }
        }
    }
    if (players == 0) throw ParseError("no player");
    if (players > 1) throw ParseError("multiple players");

    // Interior = squares reachable from the player with boxes treated as
    // passable. It must not touch the grid border.
    BitRows non_wall(lv.height);
    for (int y = 0; y < lv.height; y++)
        for (int x = 0; x < lv.width; x++)
            if (!lv.walls.test({x, y})) non_wall.set({x, y});
    BitRows interior = flood_from(non_wall, lv.start_player);
    bool leaks = false;
    interior.for_each([&](Square s) {
        if (s.x == 0 || s.x == lv.width - 1 || s.y == 0 || s.y == lv.height - 1) leaks = true;
    });
    if (leaks) throw ParseError("interior leaks to grid border");

    bool outside = false;
    lv.start_boxes.for_each([&](Square s) {
        if (!interior.test(s)) outside = true;
    });
    lv.targets.for_each([&](Square s) {
        if (!interior.test(s)) outside = true;
    });
    if (outside) throw ParseError("box or target outside the enclosed interior");

    lv.floor = interior;
    lv.walls = BitRows(lv.height);
    for (int y = 0; y < lv.height; y++)
        for (int x = 0; x < lv.width; x++)
            if (!interior.test({x, y})) lv.walls.set({x, y});

    lv.box_count = lv.start_boxes.count();
    lv.floor_count = lv.floor.count();
    if (lv.box_count == 0) throw ParseError("no boxes");
    if (lv.box_count != lv.targets.count())
        throw ParseError("box/target count mismatch: " + std::to_string(lv.box_count) + " boxes, " +
                         std::to_string(lv.targets.count()) + " targets");
    if (lv.start_boxes.test(lv.start_player)) throw ParseError("player on box");
    return lv;
}

std::vector<Level> parse_collection(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<Level> out;
    std::vector<std::string> block;
    std::string pending_name;

    auto flush = [&]() {
        if (block.empty()) return;
        std::string joined;
        for (const auto& l : block) {
            joined += l;
            joined += '\n';
        }
        try {
            Level lv = parse_xsb(joined);
            lv.name = pending_name.empty() ? "level " + std::to_string(out.size() + 1) : pending_name;
            out.push_back(std::move(lv));
        } catch (const ParseError& e) {
            throw ParseError("level " + std::to_string(out.size() + 1) + ": " + e.what());
        }
        block.clear();
        pending_name.clear();
    };

    for (const auto& line : lines) {
        if (!line.empty() && line[0] == ';') {
            flush();
            if (pending_name.empty()) {
                size_t i = line.find_first_not_of(" \t", 1);
                if (i != std::string::npos) pending_name = line.substr(i);
            }
            continue;
        }
        if (blank(line)) {
            flush();
            continue;
        }
        block.push_back(line);
    }
    flush();
    return out;
}

std::string serialize_xsb(const Level& level) {
    std::string out;
    out.reserve(size_t(level.height) * size_t(level.width + 1));
    for (int y = 0; y < level.height; y++) {
        for (int x = 0; x < level.width; x++) {
            Square s(x, y);
            char c;
            if (level.walls.test(s)) {
                c = '#';
            } else {
                bool box = level.start_boxes.test(s);
                bool target = level.targets.test(s);
                bool player = level.start_player == s;
                if (box)
                    c = target ? '*' : '$';
                else if (player)
                    c = target ? '+' : '@';
                else
                    c = target ? '.' : ' ';
            }
            out += c;
        }
        out += '\n';
    }
    return out;
}

Level load_level_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_xsb(ss.str());
}

std::vector<Level> load_collection_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_collection(ss.str());
}

}  // namespace soko
