#include "flmod/moduleio.hpp"

#include <fstream>
#include <sstream>

namespace flmod::io {

using arith::Zq;
using gmod::CtxPtr;
using gmod::FPModule;
using gmod::Mat;
using gmod::ModuleMap;

namespace {

struct LineReader {
    std::istream& in;
    int lineno = 0;

    /* next non-empty, non-comment line split into tokens; empty at EOF */
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream is(line);
            std::vector<std::string> toks;
            std::string t;
            while (is >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        return {};
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError("line " + std::to_string(lineno) + ": " + msg);
    }
};

long to_long(LineReader& r, const std::string& s) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) r.fail("bad integer '" + s + "'");
        return v;
    } catch (const std::exception&) {
        r.fail("bad integer '" + s + "'");
    }
}

/* entry syntax: an integer, or f comma-separated integers for f > 1 */
Zq parse_entry(LineReader& r, const CtxPtr& ctx, const std::string& tok) {
    std::vector<Int> coeffs;
    std::string cur;
    for (char c : tok + ",") {
        if (c == ',') {
            if (cur.empty()) r.fail("empty coefficient in '" + tok + "'");
            try {
                coeffs.emplace_back(cur);
            } catch (const std::exception&) {
                r.fail("bad coefficient '" + cur + "'");
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (static_cast<int>(coeffs.size()) > ctx->f())
        r.fail("entry '" + tok + "' has more than f coefficients");
    coeffs.resize(static_cast<size_t>(ctx->f()), 0);
    return Zq(ctx, coeffs);
}

Mat parse_matrix(LineReader& r, const CtxPtr& ctx, int rows, int cols,
                 const std::string& where) {
    Mat m(ctx, rows, cols);
    if (rows == 0 || cols == 0) return m;  // zero-dimensional: no entry lines
    for (int i = 0; i < rows; ++i) {
        auto toks = r.next();
        if (static_cast<int>(toks.size()) != cols)
            r.fail(where + ": expected " + std::to_string(cols) + " entries per row, got " +
                   std::to_string(toks.size()));
        for (int j = 0; j < cols; ++j) m.at(i, j) = parse_entry(r, ctx, toks[static_cast<size_t>(j)]);
    }
    return m;
}

std::string emit_entry(const Zq& x) {
    std::ostringstream os;
    const auto& c = x.coeffs();
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os.str();
}

void emit_matrix(std::ostream& os, const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return;  // matches the parser's convention
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << emit_entry(m.at(i, j));
        os << "\n";
    }
}

ModuleDoc parse_module_body(LineReader& r, bool inner) {
    auto header = r.next();
    if (header.size() < 3 || header[0] != "flmod" || header[1] != "module" || header[2] != "v1")
        r.fail("expected 'flmod module v1' header");
    long p = -1;
    int N = -1, f = 1, wmax = -1;
    std::vector<Int> minpoly;
    std::string kind = "fl";
    CtxPtr ctx;
    ModuleDoc doc;
    std::vector<std::vector<int>> piece_exps;
    std::vector<Mat> vminus;
    std::vector<Mat> phi;
    std::vector<bool> have_vminus, have_phi, have_piece;

    auto need_ctx = [&](LineReader& rr) {
        if (ctx) return;
        if (p < 0 || N < 0) rr.fail("p and N must precede pieces and matrices");
        ctx = arith::PrimeContext::create(p, N, f, minpoly);
    };
    while (true) {
        auto toks = r.next();
        if (toks.empty()) {
            if (inner) r.fail("unexpected end of morphism block");
            break;
        }
        const std::string& key = toks[0];
        if (key == "end") break;
        if (key == "p") {
            p = to_long(r, toks.at(1));
            if (!is_prime_small(p)) r.fail("p = " + std::to_string(p) + " is not prime");
        } else if (key == "N") {
            N = static_cast<int>(to_long(r, toks.at(1)));
        } else if (key == "f") {
            f = static_cast<int>(to_long(r, toks.at(1)));
        } else if (key == "minpoly") {
            for (size_t i = 1; i < toks.size(); ++i) minpoly.emplace_back(toks[i]);
        } else if (key == "kind") {
            kind = toks.at(1);
            if (kind != "fl" && kind != "mazur") r.fail("kind must be fl or mazur");
        } else if (key == "wmax") {
            wmax = static_cast<int>(to_long(r, toks.at(1)));
            if (wmax < 0) r.fail("wmax must be >= 0");
            piece_exps.assign(static_cast<size_t>(wmax) + 1, {});
            vminus.assign(static_cast<size_t>(wmax), Mat());
            phi.assign(static_cast<size_t>(wmax) + 1, Mat());
            have_vminus.assign(static_cast<size_t>(wmax), false);
            have_phi.assign(static_cast<size_t>(wmax) + 1, false);
            have_piece.assign(static_cast<size_t>(wmax) + 1, false);
        } else if (key == "piece") {
            need_ctx(r);
            if (wmax < 0) r.fail("wmax must precede pieces");
            int deg = static_cast<int>(to_long(r, toks.at(1)));
            if (deg < 0 || deg > wmax) r.fail("piece degree out of window");
            std::vector<int> exps;
            size_t i = 2;
            if (i < toks.size() && toks[i] == "free") {
                long rank = to_long(r, toks.at(i + 1));
                exps.insert(exps.end(), static_cast<size_t>(rank), N);
                i += 2;
            }
            if (i < toks.size()) {
                if (toks[i] != "tors") r.fail("expected 'free <r>' and/or 'tors <e...>'");
                for (++i; i < toks.size(); ++i) {
                    int e = static_cast<int>(to_long(r, toks[i]));
                    if (e < 1 || e > N) r.fail("torsion exponent out of [1, N]");
                    exps.push_back(e);
                }
            }
            piece_exps[static_cast<size_t>(deg)] = std::move(exps);
            have_piece[static_cast<size_t>(deg)] = true;
        } else if (key == "vminus" || key == "phi") {
            need_ctx(r);
            if (wmax < 0) r.fail("wmax must precede matrices");
            int deg = static_cast<int>(to_long(r, toks.at(1)));
            auto check_piece = [&](int d) {
                if (d < 0 || d > wmax || !have_piece[static_cast<size_t>(d)])
                    r.fail("piece " + std::to_string(d) + " must precede its matrices");
            };
            if (key == "vminus") {
                if (deg < 1 || deg > wmax) r.fail("vminus degree out of range [1, wmax]");
                check_piece(deg);
                check_piece(deg - 1);
                int rows = static_cast<int>(piece_exps[static_cast<size_t>(deg - 1)].size());
                int cols = static_cast<int>(piece_exps[static_cast<size_t>(deg)].size());
                vminus[static_cast<size_t>(deg - 1)] =
                    parse_matrix(r, ctx, rows, cols, "vminus " + std::to_string(deg));
                have_vminus[static_cast<size_t>(deg - 1)] = true;
            } else {
                if (deg < 0 || deg > wmax) r.fail("phi degree out of range [0, wmax]");
                check_piece(deg);
                check_piece(0);
                int rows = static_cast<int>(piece_exps[0].size());
                int cols = static_cast<int>(piece_exps[static_cast<size_t>(deg)].size());
                phi[static_cast<size_t>(deg)] =
                    parse_matrix(r, ctx, rows, cols, "phi " + std::to_string(deg));
                have_phi[static_cast<size_t>(deg)] = true;
            }
        } else {
            r.fail("unknown keyword '" + key + "'");
        }
    }
    if (wmax < 0) r.fail("missing wmax");
    need_ctx(r);
    for (int i = 0; i <= wmax; ++i)
        if (!have_piece[static_cast<size_t>(i)]) r.fail("missing piece " + std::to_string(i));
    for (int i = 0; i < wmax; ++i)
        if (!have_vminus[static_cast<size_t>(i)])
            r.fail("missing vminus " + std::to_string(i + 1));
    for (int i = 0; i <= wmax; ++i)
        if (!have_phi[static_cast<size_t>(i)]) r.fail("missing phi " + std::to_string(i));

    doc.kind = kind;
    doc.mod.base.ctx = ctx;
    doc.mod.base.wmax = wmax;
    for (int i = 0; i <= wmax; ++i)
        doc.mod.base.pieces.push_back(FPModule{ctx, piece_exps[static_cast<size_t>(i)]});
    for (int i = 1; i <= wmax; ++i) {
        try {
            doc.mod.base.vminus.emplace_back(doc.mod.base.piece(i), doc.mod.base.piece(i - 1),
                                             vminus[static_cast<size_t>(i - 1)]);
        } catch (const Error& e) {
            r.fail("vminus " + std::to_string(i) + ": " + e.what());
        }
    }
    doc.mod.phi = std::move(phi);
    return doc;
}

}  // namespace

ModuleDoc parse_module(std::istream& in) {
    LineReader r{in};
    return parse_module_body(r, false);
}

ModuleDoc parse_module_string(const std::string& text) {
    std::istringstream is(text);
    return parse_module(is);
}

ModuleDoc parse_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return parse_module(in);
}

std::string emit_module(const ModuleDoc& doc) {
    std::ostringstream os;
    const auto& M = doc.mod;
    const CtxPtr& ctx = M.ctx();
    os << "flmod module v1\n";
    os << "p " << ctx->p() << "\n";
    os << "N " << ctx->N() << "\n";
    if (ctx->f() > 1) {
        os << "f " << ctx->f() << "\n";
        os << "minpoly";
        for (const auto& c : ctx->minpoly()) os << " " << c;
        os << "\n";
    }
    os << "kind " << doc.kind << "\n";
    os << "wmax " << M.wmax() << "\n";
    for (int i = 0; i <= M.wmax(); ++i) {
        const FPModule& piece = M.base.piece(i);
        int free = 0;
        std::vector<int> tors;
        for (int e : piece.sorted_exps()) {
            if (e == ctx->N())
                ++free;
            else
                tors.push_back(e);
        }
        os << "piece " << i << " free " << free;
        if (!tors.empty()) {
            os << " tors";
            for (int e : tors) os << " " << e;
        }
        os << "\n";
    }
    for (int i = 1; i <= M.wmax(); ++i) {
        os << "vminus " << i << "\n";
        emit_matrix(os, M.base.vminus[static_cast<size_t>(i - 1)].A);
    }
    for (int i = 0; i <= M.wmax(); ++i) {
        os << "phi " << i << "\n";
        emit_matrix(os, M.phi[static_cast<size_t>(i)]);
    }
    os << "end\n";
    return os.str();
}

fl::FLMorphism MorphismDoc::morphism() const {
    fl::FLMorphism m;
    m.src = source.mod;
    m.dst = target.mod;
    m.f = maps;
    return m;
}

MorphismDoc parse_morphism(std::istream& in) {
    LineReader r{in};
    auto header = r.next();
    if (header.size() < 3 || header[0] != "flmod" || header[1] != "morphism" ||
        header[2] != "v1")
        r.fail("expected 'flmod morphism v1' header");
    MorphismDoc doc;
    auto toks = r.next();
    if (toks.empty() || toks[0] != "source") r.fail("expected 'source'");
    doc.source = parse_module_body(r, true);
    toks = r.next();
    if (toks.empty() || toks[0] != "target") r.fail("expected 'target'");
    doc.target = parse_module_body(r, true);
    int W = std::max(doc.source.mod.wmax(), doc.target.mod.wmax());
    if (!doc.source.mod.ctx()->same_field(*doc.target.mod.ctx()) ||
        doc.source.mod.ctx()->N() != doc.target.mod.ctx()->N())
        r.fail("source and target live over different contexts");
    for (int i = 0; i <= W; ++i) {
        toks = r.next();
        if (toks.size() != 2 || toks[0] != "map" || to_long(r, toks[1]) != i)
            r.fail("expected 'map " + std::to_string(i) + "'");
        int rows = doc.target.mod.base.piece_eff(i).ngens();
        int cols = doc.source.mod.base.piece_eff(i).ngens();
        doc.maps.push_back(
            parse_matrix(r, doc.source.mod.ctx(), rows, cols, "map " + std::to_string(i)));
    }
    return doc;
}

MorphismDoc parse_morphism_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return parse_morphism(in);
}

std::string emit_morphism(const MorphismDoc& doc) {
    std::ostringstream os;
    os << "flmod morphism v1\n";
    os << "source\n" << emit_module(doc.source);
    os << "target\n" << emit_module(doc.target);
    for (size_t i = 0; i < doc.maps.size(); ++i) {
        os << "map " << i << "\n";
        emit_matrix(os, doc.maps[i]);
    }
    os << "end\n";
    return os.str();
}

}  // namespace flmod::io
