#include "soko/replay.hpp"

namespace soko {
namespace {

struct Grid {
    int w, h;
    std::vector<char> cell;  // '#', ' ' or '.'
    std::vector<char> box;
    int px, py;

    char& at(std::vector<char>& g, int x, int y) { return g[size_t(y) * size_t(w) + size_t(x)]; }
    bool wall(int x, int y) const {
        if (x < 0 || x >= w || y < 0 || y >= h) return true;
        return cell[size_t(y) * size_t(w) + size_t(x)] == '#';
    }
    bool has_box(int x, int y) const {
        if (x < 0 || x >= w || y < 0 || y >= h) return false;
        return box[size_t(y) * size_t(w) + size_t(x)] != 0;
    }
    bool target(int x, int y) const { return cell[size_t(y) * size_t(w) + size_t(x)] == '.'; }

    std::string render() const {
        std::string out;
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                char c;
                if (wall(x, y))
                    c = '#';
                else if (has_box(x, y))
                    c = target(x, y) ? '*' : '$';
                else if (x == px && y == py)
                    c = target(x, y) ? '+' : '@';
                else
                    c = target(x, y) ? '.' : ' ';
                out += c;
            }
            out += '\n';
        }
        return out;
    }

    bool all_packed() const {
        for (int y = 0; y < h; y++)
            for (int x = 0; x < w; x++) {
                if (has_box(x, y) && !target(x, y)) return false;
                if (target(x, y) && !has_box(x, y)) return false;
            }
        return true;
    }
};

}  // namespace

ReplayResult replay_lurd(const Level& level, std::string_view lurd) {
    Grid g;
    g.w = level.width;
    g.h = level.height;
    g.cell.assign(size_t(g.w) * size_t(g.h), ' ');
    g.box.assign(size_t(g.w) * size_t(g.h), 0);
    for (int y = 0; y < g.h; y++)
        for (int x = 0; x < g.w; x++) {
            if (level.walls.test({x, y})) g.at(g.cell, x, y) = '#';
            if (level.targets.test({x, y})) g.at(g.cell, x, y) = '.';
            if (level.start_boxes.test({x, y})) g.at(g.box, x, y) = 1;
        }
    g.px = level.start_player.x;
    g.py = level.start_player.y;

    ReplayResult out;
    out.frames.push_back(g.render());

    for (int i = 0; i < int(lurd.size()); i++) {
        char c = lurd[size_t(i)];
        int dx = 0, dy = 0;
        bool push;
        switch (c) {
            case 'u': case 'U': dy = -1; push = c == 'U'; break;
            case 'd': case 'D': dy = 1; push = c == 'D'; break;
            case 'l': case 'L': dx = -1; push = c == 'L'; break;
            case 'r': case 'R': dx = 1; push = c == 'R'; break;
            default:
                throw ReplayError(i, "step " + std::to_string(i) + ": unknown move '" + c + "'");
        }
        int nx = g.px + dx, ny = g.py + dy;
        if (push) {
            if (!g.has_box(nx, ny))
                throw ReplayError(i, "step " + std::to_string(i) + ": push without a box ahead");
            int bx = nx + dx, by = ny + dy;
            if (g.wall(bx, by) || g.has_box(bx, by))
                throw ReplayError(i, "step " + std::to_string(i) + ": push into a blocked square");
            g.at(g.box, nx, ny) = 0;
            g.at(g.box, bx, by) = 1;
        } else {
            if (g.wall(nx, ny))
                throw ReplayError(i, "step " + std::to_string(i) + ": walk into a wall");
            if (g.has_box(nx, ny))
                throw ReplayError(i, "step " + std::to_string(i) + ": walk into a box");
        }
        g.px = nx;
        g.py = ny;
        out.frames.push_back(g.render());
    }
    out.solved = g.all_packed();
    return out;
}

}  // namespace soko
