#pragma once
// Text serialization: coefficient trees and test functions in a small
// line-based format, and the CSV report schema. All numbers print with
// %.17g so a written value reads back bit-identically.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "coeff_tree.hpp"
#include "wavelet.hpp"

namespace waveshrink {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_values(std::ostream& os, const std::vector<double>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) os << ' ';
        os << format_double(vs[i]);
    }
    os << '\n';
}

inline std::vector<double> read_values(std::istream& is, std::size_t count) {
    std::vector<double> vs(count);
    for (auto& v : vs) {
        if (!(is >> v)) throw std::runtime_error("tree parse: truncated coefficient row");
    }
    return vs;
}

}  // namespace detail

// Format:
//   waveshrink-tree 1
//   <basis> <j0> <jmax>
//   <2^j0 coarse values>
//   <2^j detail values>          for j = j0 .. jmax-1
inline void save_tree(std::ostream& os, const CoefficientTree& tree, const std::string& basis) {
    os << "waveshrink-tree 1\n" << basis << ' ' << tree.coarse_level << ' ' << tree.max_level
       << '\n';
    detail::write_values(os, tree.coarse);
    for (int j = tree.coarse_level; j < tree.max_level; ++j)
        detail::write_values(os, tree.level(j));
}

struct LoadedTree {
    CoefficientTree tree;
    std::string basis;
};

inline LoadedTree load_tree(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "waveshrink-tree" || version != 1)
        throw std::runtime_error("tree parse: bad header");
    LoadedTree out;
    int j0 = 0, jmax = 0;
    if (!(is >> out.basis >> j0 >> jmax)) throw std::runtime_error("tree parse: bad level line");
    if (j0 < 0 || jmax < j0 || jmax > 40) throw std::runtime_error("tree parse: bad levels");
    out.tree = CoefficientTree(j0, jmax);
    out.tree.coarse = detail::read_values(is, std::size_t(1) << j0);
    for (int j = j0; j < jmax; ++j)
        out.tree.level(j) = detail::read_values(is, std::size_t(1) << j);
    return out;
}

inline void save_tree_file(const std::string& path, const CoefficientTree& tree,
                           const std::string& basis) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    save_tree(os, tree, basis);
}

inline LoadedTree load_tree_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    return load_tree(is);
}

// A test function serializes as a metadata line plus its tree.
inline void save_function(std::ostream& os, const TestFunction& f) {
    os << "waveshrink-function 1\n"
       << f.name << ' ' << detail::format_double(f.declared_class.alpha) << ' '
       << detail::format_double(f.declared_class.bound) << '\n';
    save_tree(os, f.true_tree, f.spec.name);
}

struct LoadedFunction {
    std::string name;
    HolderClass declared_class;
    LoadedTree tree;
};

inline LoadedFunction load_function(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "waveshrink-function" || version != 1)
        throw std::runtime_error("function parse: bad header");
    LoadedFunction out;
    double alpha = 0.0, bound = 0.0;
    if (!(is >> out.name >> alpha >> bound))
        throw std::runtime_error("function parse: bad metadata line");
    out.declared_class = HolderClass(alpha, bound);
    out.tree = load_tree(is);
    return out;
}

// CSV schema shared by all reports. `label` carries the run-specific role
// (function name, "f0", "max", "ratefit", ...).
inline const char* csv_header() {
    return "estimator,n,alpha,M,x0,c_n,reps,mean,stderr,seed,label";
}

struct CsvRow {
    std::string estimator;
    long long n = 0;
    double alpha = 0.0;
    double m = 0.0;
    double x0 = 0.0;
    double c_n = 0.0;
    int reps = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;
    std::string label;

    std::string to_line() const {
        std::ostringstream os;
        os << estimator << ',' << n << ',' << detail::format_double(alpha) << ','
           << detail::format_double(m) << ',' << detail::format_double(x0) << ','
           << detail::format_double(c_n) << ',' << reps << ',' << detail::format_double(mean)
           << ',' << detail::format_double(stderr_) << ',' << seed << ',' << label;
        return os.str();
    }
};

}  // namespace waveshrink
