#include "k3auto/lattices.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "k3auto/refdata.hpp"

namespace k3auto {

bool LatticeSpec::is_even() const {
    for (int i = 0; i < rank(); ++i)
        if (gram[i][i] % 2 != 0) return false;
    return true;
}

bool LatticeSpec::is_symmetric() const {
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i]) return false;
    return true;
}

namespace {

std::vector<std::vector<Int>> zeros(int n) {
    return std::vector<std::vector<Int>>(n, std::vector<Int>(n, Int(0)));
}

LatticeSpec root_lattice_A(int n) {
    auto g = zeros(n);
    for (int i = 0; i < n; ++i) {
        g[i][i] = 2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
    }
    return {"A" + std::to_string(n), g};
}

LatticeSpec root_lattice_D(int n) {
    // chain 0-1-...-(n-2) with the extra node n-1 attached to node n-3
    auto g = zeros(n);
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (int i = 0; i + 1 < n - 1; ++i) g[i][i + 1] = g[i + 1][i] = -1;
    g[n - 3][n - 1] = g[n - 1][n - 3] = -1;
    return {"D" + std::to_string(n), g};
}

LatticeSpec root_lattice_E(int n) {
    // chain 0-...-(n-2), extra node n-1 attached to node 2
    auto g = zeros(n);
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (int i = 0; i + 1 < n - 1; ++i) g[i][i + 1] = g[i + 1][i] = -1;
    g[2][n - 1] = g[n - 1][2] = -1;
    return {"E" + std::to_string(n), g};
}

}  // namespace

LatticeSpec named_lattice(const std::string& name) {
    std::string s;
    for (char c : name)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') s += c;
    if (s == "U") return {"U", {{Int(0), Int(1)}, {Int(1), Int(0)}}};
    if (s.rfind("U(", 0) == 0 && s.back() == ')') {
        Int m(s.substr(2, s.size() - 3));
        return {"U(" + m.get_str() + ")", {{Int(0), m}, {m, Int(0)}}};
    }
    if (s.size() >= 2 && (s[0] == 'A' || s[0] == 'D' || s[0] == 'E')) {
        int n = std::stoi(s.substr(1));
        if (s[0] == 'A' && n >= 1) return root_lattice_A(n);
        if (s[0] == 'D' && n >= 4) return root_lattice_D(n);
        if (s[0] == 'E' && n >= 6 && n <= 8) return root_lattice_E(n);
    }
    if (s == "H5") {
        // not defined in the sources this engine reproduces directly;
        // transcribed Gram data must be present in the reference data file
        for (const auto& f : reference_data()["facts"]) {
            if (f["kind"] != "lattice_gram") continue;
            if (f["name"] != "H5") continue;
            LatticeSpec l;
            l.name = "H5";
            for (const auto& row : f["gram"]) {
                std::vector<Int> r;
                for (const auto& v : row) r.emplace_back(v.get<long>());
                l.gram.push_back(std::move(r));
            }
            return l;
        }
        throw std::runtime_error(
            "named_lattice: H5 requires external reference data (lattice_gram fact missing)");
    }
    throw std::invalid_argument("named_lattice: unknown name '" + name + "'");
}

LatticeSpec direct_sum(const LatticeSpec& a, const LatticeSpec& b) {
    int n = a.rank(), m = b.rank();
    auto g = zeros(n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
    std::string name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "+" + b.name);
    return {name, g};
}

Int lattice_det(const LatticeSpec& l) {
    // Bareiss fraction-free elimination
    int n = l.rank();
    if (n == 0) return 1;
    auto a = l.gram;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Signature lattice_signature(const LatticeSpec& l) {
    if (!l.is_symmetric()) throw std::invalid_argument("signature: matrix not symmetric");
    int n = l.rank();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rat(l.gram[i][j]);
    Signature sig;
    int row = 0;
    while (row < n) {
        // find a nonzero diagonal entry at or below `row`
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (a[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // all diagonal zero; look for an off-diagonal entry to mix in
            int bi = -1, bj = -1;
            for (int i = row; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) {
                sig.radical = n - row;
                return sig;
            }
            // congruence: add row/col bj into bi to create a diagonal entry
            for (int j = 0; j < n; ++j) a[bi][j] += a[bj][j];
            for (int i = 0; i < n; ++i) a[i][bi] += a[i][bj];
            continue;
        }
        if (piv != row) {
            std::swap(a[piv], a[row]);
            for (int i = 0; i < n; ++i) std::swap(a[i][piv], a[i][row]);
        }
        Rat d = a[row][row];
        (d > 0 ? sig.positive : sig.negative) += 1;
        for (int i = row + 1; i < n; ++i) {
            if (a[i][row] == 0) continue;
            Rat c = a[i][row] / d;
            for (int j = 0; j < n; ++j) a[i][j] -= c * a[row][j];
            for (int j = 0; j < n; ++j) a[j][i] -= c * a[j][row];
        }
        ++row;
    }
    return sig;
}

LatticeSpec gram_of_curve_classes(const std::vector<std::vector<Int>>& gram,
                                  const std::string& name) {
    LatticeSpec l{name, gram};
    for (const auto& row : gram)
        if (row.size() != gram.size())
            throw std::invalid_argument("gram_of_curve_classes: matrix not square");
    if (!l.is_symmetric())
        throw std::invalid_argument("gram_of_curve_classes: matrix not symmetric");
    return l;
}

LatticeSpec parse_lattice_expression(const std::string& expr) {
    LatticeSpec acc{"", {}};
    std::string cur;
    int depth = 0;
    auto flush = [&]() {
        if (cur.empty()) throw std::invalid_argument("lattice expression: empty summand");
        acc = acc.rank() == 0 ? named_lattice(cur) : direct_sum(acc, named_lattice(cur));
        cur.clear();
    };
    for (char c : expr) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '+' && depth == 0) {
            flush();
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    flush();
    return acc;
}

}  // namespace k3auto
