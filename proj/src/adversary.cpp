#include <algorithm>

#include "unlearn/instances.hpp"

namespace unlearn {

AdversaryRun run_adversary(const LbInstance& inst, const Scheme& scheme, const Secret& z) {
    if (scheme.task() != inst.task) throw PreconditionViolation("scheme " + scheme.name() + " answers a different task");
    const Dataset data = inst.dataset_of(z);
    const auto state = scheme.learn(data);

    AdversaryRun run;
    run.n = data.size();
    run.aux_bits = state->aux_bits();
    for (auto b : state->ticket_bits()) run.max_ticket_bits = std::max(run.max_ticket_bits, b);
    run.recovered.assign(static_cast<std::size_t>(inst.p), -1);
    for (std::size_t step = 0; step < inst.order.size(); ++step) {
        const auto coord = static_cast<std::size_t>(inst.order[step]);
        if (inst.fixed[coord] >= 0) {
            run.recovered[coord] = inst.fixed[coord];
            continue;
        }
        // the plan may only look at bits already recovered
        Query q = inst.query(static_cast<int>(step), run.recovered);
        Answer a = state->unlearn(deletion_of(data, q));
        run.recovered[coord] = inst.decode(static_cast<int>(step), a);
        run.transcript.emplace_back(std::move(q), a);
    }
    return run;
}

}  // namespace unlearn
