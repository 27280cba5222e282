#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "lpae/mlp.hpp"
#include "lpae/numio.hpp"

namespace lpae {

namespace detail {

inline void write_mlp(std::ostream& os, const Mlp& mlp, const std::string& name) {
    os << name << '\n' << "dims";
    for (std::size_t d : mlp.layer_dims) os << ' ' << d;
    os << '\n';
    os << "hidden " << to_string(mlp.hidden_activation) << '\n';
    os << "output " << to_string(mlp.output_activation) << '\n';
    for (std::size_t k = 0; k < mlp.layers(); ++k) {
        const Matrix& w = mlp.weights[k];
        os << "w" << k << ' ' << w.rows() << ' ' << w.cols() << '\n';
        for (std::size_t i = 0; i < w.rows(); ++i) {
            for (std::size_t j = 0; j < w.cols(); ++j) os << (j ? " " : "") << format_double(w(i, j));
            os << '\n';
        }
        os << "b" << k << ' ' << mlp.biases[k].size() << '\n';
        for (std::size_t i = 0; i < mlp.biases[k].size(); ++i)
            os << (i ? " " : "") << format_double(mlp.biases[k][i]);
        os << '\n';
    }
}

inline Mlp read_mlp(std::istream& is, const std::string& expected_name) {
    std::string tok;
    if (!(is >> tok) || tok != expected_name)
        throw std::runtime_error("checkpoint: expected section '" + expected_name + "'");
    if (!(is >> tok) || tok != "dims") throw std::runtime_error("checkpoint: missing dims");
    Mlp mlp;
    // dims end where the "hidden" keyword begins
    while (is >> tok && tok != "hidden") mlp.layer_dims.push_back(static_cast<std::size_t>(parse_int(tok)));
    std::string act;
    is >> act;
    mlp.hidden_activation = activation_from_string(act);
    is >> tok >> act;
    if (tok != "output") throw std::runtime_error("checkpoint: missing output activation");
    mlp.output_activation = activation_from_string(act);
    for (std::size_t k = 0; k + 1 < mlp.layer_dims.size(); ++k) {
        std::size_t rows = 0, cols = 0;
        is >> tok >> rows >> cols;
        if (tok != "w" + std::to_string(k)) throw std::runtime_error("checkpoint: bad weight header");
        Matrix w(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (!(is >> tok)) throw std::runtime_error("checkpoint: truncated weights");
                w(i, j) = parse_double(tok);
            }
        mlp.weights.push_back(std::move(w));
        std::size_t blen = 0;
        is >> tok >> blen;
        if (tok != "b" + std::to_string(k)) throw std::runtime_error("checkpoint: bad bias header");
        Vec b(blen);
        for (std::size_t i = 0; i < blen; ++i) {
            if (!(is >> tok)) throw std::runtime_error("checkpoint: truncated biases");
            b[i] = parse_double(tok);
        }
        mlp.biases.push_back(std::move(b));
    }
    return mlp;
}

} // namespace detail

inline constexpr const char* kCheckpointMagic = "lpae-checkpoint-v1";

// Versioned text dump of both networks; values round-trip bit-exactly.
inline void save_checkpoint(std::ostream& os, const Mlp& encoder, const Mlp& decoder) {
    os << kCheckpointMagic << '\n';
    detail::write_mlp(os, encoder, "encoder");
    detail::write_mlp(os, decoder, "decoder");
}

inline std::pair<Mlp, Mlp> load_checkpoint(std::istream& is) {
    std::string magic;
    if (!(is >> magic) || magic != kCheckpointMagic)
        throw std::runtime_error("checkpoint: bad or missing magic header");
    Mlp enc = detail::read_mlp(is, "encoder");
    Mlp dec = detail::read_mlp(is, "decoder");
    return {std::move(enc), std::move(dec)};
}

} // namespace lpae
