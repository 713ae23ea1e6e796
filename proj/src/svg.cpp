#include "elian/svg.hpp"

namespace elian {

void render_svg(const Grid& grid, std::span<const Cell> path, std::ostream& out)
{
    const int w = grid.width();
    const int h = grid.height();
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\""
        << w * 4 << "\" height=\"" << h * 4 << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    out << "<g fill=\"#333\">\n";
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (grid.blocked({c, r}))
                out << "<rect class=\"blocked\" x=\"" << c << "\" y=\"" << r << "\" width=\"1\" height=\"1\"/>\n";
    out << "</g>\n";

    if (!path.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#d22\" stroke-width=\"0.3\" points=\"";
        for (std::size_t i = 0; i < path.size(); ++i)
            out << (i ? " " : "") << path[i].col << ".5," << path[i].row << ".5";
        out << "\"/>\n";
        const Cell s = path.front();
        const Cell g = path.back();
        out << "<circle class=\"start\" cx=\"" << s.col << ".5\" cy=\"" << s.row
            << ".5\" r=\"0.6\" fill=\"#2a2\"/>\n";
        out << "<circle class=\"goal\" cx=\"" << g.col << ".5\" cy=\"" << g.row
            << ".5\" r=\"0.6\" fill=\"#22d\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace elian
