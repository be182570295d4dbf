#include "seqcsim/pathsum.hpp"

#include <stdexcept>

#include "seqcsim/errors.hpp"

namespace seqcsim {

const ComplexAmp* AmpCache::find(std::uint32_t pc, std::uint64_t bits) {
    if (!enabled())
        return nullptr;
    auto it = map_.find({pc, bits});
    if (it == map_.end())
        return nullptr;
    order_.splice(order_.begin(), order_, it->second);
    return &it->second->second;
}

void AmpCache::store(std::uint32_t pc, std::uint64_t bits, ComplexAmp value) {
    if (!enabled())
        return;
    Key key{pc, bits};
    auto it = map_.find(key);
    if (it != map_.end()) {
        it->second->second = value;
        order_.splice(order_.begin(), order_, it->second);
        return;
    }
    if (order_.size() >= capacity_) {
        map_.erase(order_.back().first);
        order_.pop_back();
    }
    order_.emplace_front(key, value);
    map_[key] = order_.begin();
}

void AmpCache::clear() {
    order_.clear();
    map_.clear();
}

std::vector<ComplexAmp> step_amplitudes(std::span<const ComplexAmp> amps, const OperatorMatrix& m,
                                        Metrics* metrics) {
    const std::uint64_t dim = m.dim();
    if (amps.size() != dim)
        throw std::invalid_argument("amplitude vector length does not match operator dimension");
    std::vector<ComplexAmp> out(dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
        ComplexAmp acc{0.0, 0.0};
        for (std::uint64_t c = 0; c < dim; ++c)
            acc += m.at(r, c) * amps[c];
        out[r] = acc;
        if (metrics)
            ++metrics->matrix_mults;
    }
    return out;
}

std::vector<BasisState> neighbors(const BasisState& state, const Operation& op,
                                  const Circuit& circuit) {
    const auto& m = circuit.op_matrix(op);
    std::vector<BasisState> out;
    out.reserve(m.dim());
    for (std::uint64_t l = 0; l < m.dim(); ++l)
        out.push_back(with_local_index(state, op.operands, l));
    return out;
}

PathSumEngine::PathSumEngine(const Circuit& circuit, BasisState input, EngineOptions options)
    : circuit_(&circuit), input_(input), options_(options), cache_(options.cache_capacity) {
    if (input.width != circuit.width())
        throw std::invalid_argument("input state width does not match circuit width");
}

void PathSumEngine::set_hybrid_base(std::uint32_t base_pc, std::vector<ComplexAmp> snapshot) {
    if (base_pc > circuit_->op_count())
        throw std::invalid_argument("hybrid base exceeds the operation count");
    if (circuit_->width() >= 63 ||
        snapshot.size() != (std::uint64_t{1} << circuit_->width()))
        throw std::invalid_argument("hybrid snapshot length must be 2^width");
    double norm = 0;
    for (const auto& a : snapshot)
        norm += a.norm_sqr();
    if (norm < 1.0 - 1e-9 || norm > 1.0 + 1e-9)
        throw NumericError("hybrid snapshot is not normalized");
    base_pc_ = base_pc;
    base_snapshot_ = std::move(snapshot);
    cache_.clear();
}

ComplexAmp PathSumEngine::base_amplitude(std::uint64_t bits) const {
    if (!base_snapshot_.empty())
        return base_snapshot_[bits];
    return bits == input_.bits ? ComplexAmp{1.0, 0.0} : ComplexAmp{0.0, 0.0};
}

void PathSumEngine::check_pc(std::uint32_t pc) const {
    if (pc > circuit_->op_count())
        throw std::out_of_range("pc exceeds the operation count");
    if (pc < base_pc_)
        throw std::invalid_argument("pc precedes the hybrid snapshot point");
}

ComplexAmp PathSumEngine::amplitude(const BasisState& state, std::uint32_t pc) {
    return options_.kernel == Kernel::Recursive ? calc_amp(state, pc)
                                                : calc_amp_iterative(state, pc);
}

ComplexAmp PathSumEngine::recurse(std::uint64_t bits, std::uint32_t pc, std::uint64_t depth) {
    if (const ComplexAmp* hit = cache_.find(pc, bits)) {
        ++metrics_.cache_hits;
        return *hit;
    }
    ++metrics_.calc_amp_calls;
    if (cache_.enabled())
        ++metrics_.cache_misses;
    if (depth > metrics_.max_depth)
        metrics_.max_depth = depth;

    ComplexAmp out;
    if (pc == base_pc_) {
        out = base_amplitude(bits);
    } else {
        const Operation& op = circuit_->ops()[pc - 1];
        const OperatorMatrix& m = circuit_->op_matrix(op);
        const std::uint64_t l = local_index_bits(bits, op.operands);
        if (m.trivial()) {
            // Diagonal gate: the one possible predecessor is the state
            // itself.
            out = m.at(l, l) * recurse(bits, pc - 1, depth + 1);
            ++metrics_.matrix_mults;
        } else {
            ComplexAmp acc{0.0, 0.0};
            const std::uint64_t dim = m.dim();
            for (std::uint64_t lp = 0; lp < dim; ++lp) {
                std::uint64_t pred = with_local_index_bits(bits, op.operands, lp);
                acc += m.at(l, lp) * recurse(pred, pc - 1, depth + 1);
            }
            ++metrics_.matrix_mults;
            out = acc;
        }
    }
    cache_.store(pc, bits, out);
    return out;
}

ComplexAmp PathSumEngine::calc_amp(const BasisState& state, std::uint32_t pc) {
    check_pc(pc);
    if (state.width != circuit_->width())
        throw std::invalid_argument("state width does not match circuit width");
    if (circuit_->op_count() > kRecursiveOpLimit)
        throw std::invalid_argument(
            "circuit exceeds the recursive kernel's 10000-operation limit; "
            "use the iterative kernel");
    return recurse(state.bits, pc, 0);
}

// Explicit-stack twin of recurse(): one StackFrame per level holds the
// amplitude accumulated so far plus the branch index, and the state at the
// current level is maintained in a single word (descending rewrites the
// operand bits, ascending restores them from self_index). Auxiliary memory
// is one frame per circuit operation.
ComplexAmp PathSumEngine::calc_amp_iterative(const BasisState& state, std::uint32_t pc) {
    check_pc(pc);
    if (state.width != circuit_->width())
        throw std::invalid_argument("state width does not match circuit width");

    const std::uint32_t top_pc = pc;
    std::uint64_t cur = state.bits;
    stack_.clear();

    ComplexAmp value{0.0, 0.0};
    bool returning = false;

    for (;;) {
        if (!returning) {
            // "Call" on the node (cur, node_pc).
            const std::uint32_t node_pc = top_pc - static_cast<std::uint32_t>(stack_.size());
            if (const ComplexAmp* hit = cache_.find(node_pc, cur)) {
                ++metrics_.cache_hits;
                value = *hit;
                returning = true;
                continue;
            }
            ++metrics_.calc_amp_calls;
            if (cache_.enabled())
                ++metrics_.cache_misses;
            if (stack_.size() > metrics_.max_depth)
                metrics_.max_depth = stack_.size();

            if (node_pc == base_pc_) {
                value = base_amplitude(cur);
                cache_.store(node_pc, cur, value);
                returning = true;
                continue;
            }
            const Operation& op = circuit_->ops()[node_pc - 1];
            const OperatorMatrix& m = circuit_->op_matrix(op);
            const std::uint64_t l = local_index_bits(cur, op.operands);
            stack_.push_back(StackFrame{{0.0, 0.0}, static_cast<std::uint8_t>(l), 0,
                                        m.trivial()});
            if (stack_.size() > metrics_.peak_stack_entries)
                metrics_.peak_stack_entries = stack_.size();
            if (!m.trivial())
                cur = with_local_index_bits(cur, op.operands, 0);
            // Trivial gate: descend into the same state.
        } else {
            if (stack_.empty())
                return value;
            StackFrame& frame = stack_.back();
            const std::uint32_t parent_pc =
                top_pc - static_cast<std::uint32_t>(stack_.size()) + 1;
            const Operation& op = circuit_->ops()[parent_pc - 1];
            const OperatorMatrix& m = circuit_->op_matrix(op);
            if (frame.trivial) {
                value = m.at(frame.self_index, frame.self_index) * value;
                ++metrics_.matrix_mults;
                stack_.pop_back();
                cache_.store(parent_pc, cur, value);
                continue;
            }
            frame.acc += m.at(frame.self_index, frame.next_pred) * value;
            ++frame.next_pred;
            if (frame.next_pred < m.dim()) {
                cur = with_local_index_bits(cur, op.operands, frame.next_pred);
                returning = false;
                continue;
            }
            ++metrics_.matrix_mults;
            value = frame.acc;
            cur = with_local_index_bits(cur, op.operands, frame.self_index);
            stack_.pop_back();
            cache_.store(parent_pc, cur, value);
        }
    }
}

} // namespace seqcsim
