#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nncore/params.hpp"

namespace nncore {

// Reverse-mode tape over vector-valued nodes. Covers exactly the graphs used
// here: dense chains, LSTM cells unrolled over a window, window merges, dot
// products and the hinge/abs goal penalties. Parameters are not nodes; ops
// reference ParamEntry directly and backward() accumulates into the entry's
// gradient buffer. reset() rewinds the node cursor but keeps the storage, so
// a loop that replays the same graph shape allocates nothing after the first
// pass.
class Tape {
public:
    using Var = std::int32_t;

    void reset() { cursor_ = 0; }

    Var input(const Vector& v) {
        Var id = push(Op::input, -1, -1, nullptr, 0.0, v.size());
        node(id).val = v;
        return id;
    }

    // W.value * x
    Var matvec(ParamEntry& W, Var x) {
        if (W.value.cols() != node(x).val.size())
            throw std::invalid_argument("tape matvec: shape mismatch");
        Var id = push(Op::matvec, x, -1, &W, 0.0, W.value.rows());
        node(id).val.noalias() = W.value * node(x).val;
        return id;
    }

    // x + b  (b a column-vector parameter)
    Var add_bias(Var x, ParamEntry& b) {
        if (b.value.rows() != node(x).val.size() || b.value.cols() != 1)
            throw std::invalid_argument("tape add_bias: shape mismatch");
        Var id = push(Op::add_bias, x, -1, &b, 0.0, b.value.rows());
        node(id).val = node(x).val + b.value.col(0);
        return id;
    }

    Var add(Var a, Var b) {
        require_same(a, b, "add");
        Var id = push(Op::add, a, b, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val + node(b).val;
        return id;
    }

    Var sub(Var a, Var b) {
        require_same(a, b, "sub");
        Var id = push(Op::sub, a, b, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val - node(b).val;
        return id;
    }

    Var hadamard(Var a, Var b) {
        require_same(a, b, "hadamard");
        Var id = push(Op::hadamard, a, b, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val.cwiseProduct(node(b).val);
        return id;
    }

    Var sigmoid(Var a) {
        Var id = push(Op::sigmoid, a, -1, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val.unaryExpr([](double z) { return 1.0 / (1.0 + std::exp(-z)); });
        return id;
    }

    Var tanh(Var a) {
        Var id = push(Op::tanh_, a, -1, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val.array().tanh().matrix();
        return id;
    }

    Var relu(Var a) {
        Var id = push(Op::relu, a, -1, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val.cwiseMax(0.0);
        return id;
    }

    // clamp into [0, 1]; subgradient 0 on the flat sides
    Var clamp01(Var a) {
        Var id = push(Op::clamp01, a, -1, nullptr, 0.0, node(a).val.size());
        node(id).val = node(a).val.cwiseMax(0.0).cwiseMin(1.0);
        return id;
    }

    Var scale(Var a, double c) {
        Var id = push(Op::scale, a, -1, nullptr, c, node(a).val.size());
        node(id).val = c * node(a).val;
        return id;
    }

    Var dot(Var a, Var b) {
        require_same(a, b, "dot");
        Var id = push(Op::dot, a, b, nullptr, 0.0, 1);
        node(id).val(0) = node(a).val.dot(node(b).val);
        return id;
    }

    // size-1 node holding a[i]
    Var component(Var a, Eigen::Index i) {
        if (i < 0 || i >= node(a).val.size())
            throw std::invalid_argument("tape component: index out of range");
        Var id = push(Op::component, a, -1, nullptr, static_cast<double>(i), 1);
        node(id).val(0) = node(a).val(i);
        return id;
    }

    // max(0, v - a), elementwise
    Var hinge_below(Var a, double v) {
        Var id = push(Op::hinge_below, a, -1, nullptr, v, node(a).val.size());
        node(id).val = (v - node(a).val.array()).max(0.0).matrix();
        return id;
    }

    // max(0, a - v), elementwise
    Var hinge_above(Var a, double v) {
        Var id = push(Op::hinge_above, a, -1, nullptr, v, node(a).val.size());
        node(id).val = (node(a).val.array() - v).max(0.0).matrix();
        return id;
    }

    // |a - v|, elementwise; subgradient 0 at the kink
    Var abs_diff(Var a, double v) {
        Var id = push(Op::abs_diff, a, -1, nullptr, v, node(a).val.size());
        node(id).val = (node(a).val.array() - v).abs().matrix();
        return id;
    }

    const Vector& value(Var v) const { return nodes_[static_cast<std::size_t>(v)].val; }
    double scalar(Var v) const {
        const Vector& x = value(v);
        if (x.size() != 1) throw std::invalid_argument("tape scalar: node is not size 1");
        return x(0);
    }

    // Accumulates d(loss)/d(param) into every reachable ParamEntry::grad and
    // marks it touched. loss must be a size-1 node.
    void backward(Var loss) {
        if (value(loss).size() != 1)
            throw std::invalid_argument("tape backward: loss must be scalar");
        for (Var i = 0; i < cursor_; ++i) node(i).grad.setZero();
        node(loss).grad(0) = 1.0;

        for (Var i = cursor_ - 1; i >= 0; --i) {
            Node& n = node(i);
            const Vector& g = n.grad;
            switch (n.op) {
                case Op::input:
                    break;
                case Op::matvec:
                    n.p->grad.noalias() += g * node(n.a).val.transpose();
                    n.p->touched = true;
                    node(n.a).grad.noalias() += n.p->value.transpose() * g;
                    break;
                case Op::add_bias:
                    n.p->grad.col(0) += g;
                    n.p->touched = true;
                    node(n.a).grad += g;
                    break;
                case Op::add:
                    node(n.a).grad += g;
                    node(n.b).grad += g;
                    break;
                case Op::sub:
                    node(n.a).grad += g;
                    node(n.b).grad -= g;
                    break;
                case Op::hadamard:
                    node(n.a).grad += g.cwiseProduct(node(n.b).val);
                    node(n.b).grad += g.cwiseProduct(node(n.a).val);
                    break;
                case Op::sigmoid:
                    node(n.a).grad.array() += g.array() * n.val.array() * (1.0 - n.val.array());
                    break;
                case Op::tanh_:
                    node(n.a).grad.array() += g.array() * (1.0 - n.val.array().square());
                    break;
                case Op::relu:
                    node(n.a).grad.array() +=
                        g.array() * (node(n.a).val.array() > 0.0).cast<double>();
                    break;
                case Op::clamp01:
                    node(n.a).grad.array() +=
                        g.array() * ((node(n.a).val.array() > 0.0) &&
                                     (node(n.a).val.array() < 1.0))
                                        .cast<double>();
                    break;
                case Op::scale:
                    node(n.a).grad += n.c * g;
                    break;
                case Op::dot:
                    node(n.a).grad += g(0) * node(n.b).val;
                    node(n.b).grad += g(0) * node(n.a).val;
                    break;
                case Op::component:
                    node(n.a).grad(static_cast<Eigen::Index>(n.c)) += g(0);
                    break;
                case Op::hinge_below:
                    node(n.a).grad.array() -=
                        g.array() * (node(n.a).val.array() < n.c).cast<double>();
                    break;
                case Op::hinge_above:
                    node(n.a).grad.array() +=
                        g.array() * (node(n.a).val.array() > n.c).cast<double>();
                    break;
                case Op::abs_diff:
                    node(n.a).grad.array() +=
                        g.array() * (node(n.a).val.array() - n.c).sign();
                    break;
            }
        }
    }

private:
    enum class Op {
        input, matvec, add_bias, add, sub, hadamard, sigmoid, tanh_, relu,
        clamp01, scale, dot, component, hinge_below, hinge_above, abs_diff
    };

    struct Node {
        Op op;
        Var a, b;
        ParamEntry* p;
        double c;
        Vector val;
        Vector grad;
    };

    Node& node(Var id) { return nodes_[static_cast<std::size_t>(id)]; }
    const Node& node(Var id) const { return nodes_[static_cast<std::size_t>(id)]; }

    void require_same(Var a, Var b, const char* what) const {
        if (node(a).val.size() != node(b).val.size())
            throw std::invalid_argument(std::string("tape ") + what + ": size mismatch");
    }

    Var push(Op op, Var a, Var b, ParamEntry* p, double c, Eigen::Index out_dim) {
        if (static_cast<std::size_t>(cursor_) == nodes_.size()) nodes_.emplace_back();
        Node& n = nodes_[static_cast<std::size_t>(cursor_)];
        n.op = op;
        n.a = a;
        n.b = b;
        n.p = p;
        n.c = c;
        n.val.resize(out_dim);   // no-op when the shape repeats across resets
        n.grad.resize(out_dim);
        return cursor_++;
    }

    std::vector<Node> nodes_;
    Var cursor_ = 0;
};

} // namespace nncore
