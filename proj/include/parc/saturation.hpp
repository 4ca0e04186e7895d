#pragma once

/**
 * @file saturation.hpp
 * Fair given-clause saturation over partial clauses (Discount loop:
 * inferences among active clauses and the given clause only). Performed
 * unit superpositions trigger demodulation-style redundancy steps on the
 * main premise; a clause whose formula reaches Top is retired.
 */

#include <chrono>
#include <queue>
#include <set>

#include "parc/calculus.hpp"

namespace parc {

struct ProverOptions {
  bool crc = false;   // check all side conditions; attach equality-only formulas
  bool croc = false;  // attach formulas with ordering constraints; joint case splits
  bool crs = false;   // trivial-joinability retirement at Top
  SelectionMode selection = SelectionMode::Maximal;
  double timeLimitSeconds = 0;   // 0: unlimited
  std::uint64_t clauseLimit = 0; // 0: unlimited
  std::pair<unsigned, unsigned> ageWeightRatio{1, 4};
  bool recordSnapshots = false;  // live-clause snapshot per redundancy step
  std::ostream* trace = nullptr;

  void validate() const {
    if (croc && !crc) throw std::invalid_argument("croc requires crc");
    if (crs && !croc) throw std::invalid_argument("crs requires croc");
  }
};

/** Per-clause superposition usage, indexed by the stored side that acted
 *  as the rewriting side (left premise) or hosted the rewrite (right). */
struct OrientationUse {
  std::uint64_t asLeftPremise[2] = {0, 0};
  std::uint64_t asRightPremise[2] = {0, 0};
  std::uint64_t withFormula[2] = {0, 0};  // uses while the clause's formula was not Bot
};

struct Statistics {
  std::uint64_t performedSup = 0, performedEqRes = 0, performedEqFac = 0;
  std::uint64_t skipSup[11] = {0};    // indexed by SkipCond
  std::uint64_t skipEqRes[3] = {0};   // conditions 1..2
  std::uint64_t skipEqFac[6] = {0};   // conditions 1..5
  std::uint64_t discardedCrc = 0, discardedCroc = 0, discardedCrs = 0;
  std::uint64_t redundancySteps = 0, clausesRetired = 0;
  std::uint64_t generated = 0, duplicatesDeleted = 0, activations = 0;
  std::map<std::uint32_t, OrientationUse> orientation;

  std::vector<std::pair<std::string, std::uint64_t>> keyValues() const {
    std::vector<std::pair<std::string, std::uint64_t>> kv;
    kv.emplace_back("performed_sup", performedSup);
    kv.emplace_back("performed_eqres", performedEqRes);
    kv.emplace_back("performed_eqfac", performedEqFac);
    for (int c = 1; c <= 10; ++c) {
      std::string key = "skipped_sup_c";
      if (c <= 8) key += std::to_string(c);
      else key += (c == 9 ? "3or7" : "4or8");
      kv.emplace_back(key, skipSup[c]);
    }
    kv.emplace_back("skipped_eqres_c1", skipEqRes[1]);
    kv.emplace_back("skipped_eqres_c2", skipEqRes[2]);
    for (int c = 1; c <= 5; ++c) {
      kv.emplace_back("skipped_eqfac_c" + std::to_string(c), skipEqFac[c]);
    }
    kv.emplace_back("discarded_crc", discardedCrc);
    kv.emplace_back("discarded_croc", discardedCroc);
    kv.emplace_back("discarded_crs", discardedCrs);
    kv.emplace_back("redundancy_steps", redundancySteps);
    kv.emplace_back("clauses_retired", clausesRetired);
    kv.emplace_back("generated", generated);
    kv.emplace_back("duplicates_deleted", duplicatesDeleted);
    kv.emplace_back("activations", activations);
    return kv;
  }
};

/** One derivation event: clause creation, or a redundancy step. */
struct DerivationStep {
  Rule rule = Rule::Input;
  std::uint32_t clauseId = 0;
  std::vector<std::uint32_t> premises;
  Substitution unifier;
  Clause clause;  // the conclusion (creation) or the target clause (redundancy)
  // superposition detail, for replay
  SupArgs supArgs;
  // redundancy step detail
  FormulaRef addedFormula;
  FormulaRef newFormula;
  int attachLevel = 0;  // 1 crc, 2 croc, 3 crs
  std::vector<std::uint32_t> liveSnapshot;
};

enum class Outcome { Refutation, Saturated, ResourceOut };
enum class SZS { Unsatisfiable, Satisfiable, ResourceOut, GaveUp };

inline const char* toString(SZS s) {
  switch (s) {
    case SZS::Unsatisfiable: return "Unsatisfiable";
    case SZS::Satisfiable: return "Satisfiable";
    case SZS::ResourceOut: return "ResourceOut";
    case SZS::GaveUp: return "GaveUp";
  }
  return "?";
}

enum class Loc { Passive, Active, Retired };

struct FinalClause {
  std::uint32_t id = 0;
  Clause clause;
  FormulaRef formula;
  Loc loc = Loc::Passive;
  int formulaLevel = 0;
};

struct SaturationResult {
  Outcome outcome = Outcome::Saturated;
  SZS szs = SZS::GaveUp;
  std::string reason;
  Statistics stats;
  std::vector<DerivationStep> log;
  std::vector<FinalClause> clauses;
  std::vector<DerivationStep> proof;  // ancestor-closed, ends in the empty clause

  const FinalClause* find(std::uint32_t id) const {
    for (const auto& c : clauses) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
};

/**
 * The saturation engine. Use saturate() for a whole run, or addInput() +
 * step() to drive activations one at a time.
 */
class Prover {
public:
  Prover(Signature& sig, ProverOptions opts) : sig_(sig), opts_(std::move(opts)) {
    opts_.validate();
    params_.sig = &sig_;
    start_ = std::chrono::steady_clock::now();
  }

  const KBOParams& params() const { return params_; }
  const Statistics& stats() const { return stats_; }
  const std::vector<DerivationStep>& log() const { return log_; }

  std::optional<std::uint32_t> addInput(const Clause& c) {
    return insertClause(c, Rule::Input, {}, Substitution{}, SupArgs{});
  }

  const PartialClause* clause(std::uint32_t id) const {
    return id < entries_.size() ? &entries_[id].pc : nullptr;
  }
  Loc location(std::uint32_t id) const { return entries_.at(id).loc; }
  int formulaLevel(std::uint32_t id) const { return entries_.at(id).formulaLevel; }

  bool refuted() const { return emptyClauseId_.has_value(); }

  /** One given-clause activation. Returns false when passive is empty. */
  bool step() {
    auto givenId = popPassive();
    if (!givenId) return false;
    ++stats_.activations;
    if (opts_.trace) {
      *opts_.trace << "act " << *givenId << ": "
                   << toString(entries_[*givenId].pc.clause, sig_) << "\n";
    }
    runUnary(*givenId);
    std::vector<std::uint32_t> partners(active_.rbegin(), active_.rend());
    partners.push_back(*givenId);  // self inferences last
    for (std::uint32_t pid : partners) {
      if (stopped_ || refuted()) break;
      if (entries_[*givenId].loc == Loc::Retired) break;
      if (pid != *givenId && entries_[pid].loc != Loc::Active) continue;
      runPair(pid, *givenId);
    }
    if (entries_[*givenId].loc != Loc::Retired) {
      entries_[*givenId].loc = Loc::Active;
      active_.push_back(*givenId);
    }
    return true;
  }

  SaturationResult finish(Outcome outcome, std::string reason) {
    SaturationResult res;
    res.outcome = outcome;
    res.reason = std::move(reason);
    switch (outcome) {
      case Outcome::Refutation:
        res.szs = SZS::Unsatisfiable;
        res.proof = extractProof();
        break;
      case Outcome::Saturated:
        res.szs = opts_.selection == SelectionMode::Maximal ? SZS::Satisfiable : SZS::GaveUp;
        break;
      case Outcome::ResourceOut:
        res.szs = SZS::ResourceOut;
        break;
    }
    res.stats = stats_;
    res.log = log_;
    for (const auto& e : entries_) {
      res.clauses.push_back(FinalClause{e.pc.id, e.pc.clause, e.pc.formula, e.loc, e.formulaLevel});
    }
    return res;
  }

  SaturationResult run() {
    while (true) {
      if (refuted()) return finish(Outcome::Refutation, "empty clause derived");
      if (auto r = limitExceeded()) return finish(Outcome::ResourceOut, *r);
      if (!step()) break;
      if (stopped_) return finish(Outcome::ResourceOut, stopReason_);
    }
    if (refuted()) return finish(Outcome::Refutation, "empty clause derived");
    return finish(Outcome::Saturated, "passive clause set exhausted");
  }

private:
  struct Entry {
    PartialClause pc;
    Loc loc = Loc::Passive;
    unsigned weight = 0;
    int formulaLevel = 0;
    std::uint32_t createdStep = 0;
  };

  std::optional<std::string> limitExceeded() {
    if (opts_.clauseLimit && entries_.size() >= opts_.clauseLimit) return "clause limit";
    if (opts_.timeLimitSeconds > 0) {
      auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
      if (elapsed.count() >= opts_.timeLimitSeconds) return "time limit";
    }
    return std::nullopt;
  }

  void checkBudget() {
    if (stopped_) return;
    if (auto r = limitExceeded()) {
      stopped_ = true;
      stopReason_ = *r;
    }
  }

  // ---- clause store ----

  std::optional<std::uint32_t> insertClause(const Clause& raw, Rule rule,
                                            std::vector<std::uint32_t> premises,
                                            Substitution sigma, SupArgs supArgs) {
    Clause c = normalizeClause(raw);
    std::size_t h = clauseHash(c);
    auto range = byHash_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (clauseEqual(entries_[it->second].pc.clause, c)) {
        ++stats_.duplicatesDeleted;
        return std::nullopt;
      }
    }
    auto id = static_cast<std::uint32_t>(entries_.size());
    Entry e;
    e.pc = PartialClause{c, Formula::bot(), id, id};
    e.weight = c.weight();
    e.createdStep = static_cast<std::uint32_t>(log_.size());
    entries_.push_back(std::move(e));
    byHash_.emplace(h, id);
    ++stats_.generated;

    DerivationStep step;
    step.rule = rule;
    step.clauseId = id;
    step.premises = std::move(premises);
    step.unifier = std::move(sigma);
    step.clause = c;
    step.supArgs = std::move(supArgs);
    log_.push_back(std::move(step));

    if (opts_.trace) {
      *opts_.trace << "gen " << id << ": " << toString(c, sig_) << " [" << toString(rule);
      for (auto p : log_.back().premises) *opts_.trace << ' ' << p;
      *opts_.trace << "]\n";
    }
    if (c.empty()) {
      emptyClauseId_ = id;
      return id;
    }
    ageQ_.push({id, id});
    weightQ_.push({entries_[id].weight, id});

    if (opts_.crs && trivialJoinability(c, Formula::bot(), params_)) {
      applyRedundancyStep(id, Formula::top(), 3, {});
    }
    return id;
  }

  std::optional<std::uint32_t> popPassive() {
    unsigned period = opts_.ageWeightRatio.first + opts_.ageWeightRatio.second;
    if (period == 0) period = 1;
    bool byAge = (pickTick_++ % period) < opts_.ageWeightRatio.first;
    for (int attempt = 0; attempt < 2; ++attempt) {
      auto& q = (byAge != (attempt == 1)) ? ageQ_ : weightQ_;
      while (!q.empty()) {
        auto [key, id] = q.top();
        if (entries_[id].loc == Loc::Passive && !popped_.count(id)) {
          q.pop();
          popped_.insert(id);
          return id;
        }
        q.pop();
      }
    }
    return std::nullopt;
  }

  // ---- redundancy steps ----

  void applyRedundancyStep(std::uint32_t targetId, const FormulaRef& r2, int level,
                           std::vector<std::uint32_t> premises) {
    Entry& e = entries_[targetId];
    if (e.loc == Loc::Retired) return;
    if (r2->isBot()) return;
    FormulaRef newF = simplify(Formula::disj({e.pc.formula, r2}), params_);
    if (formulaEqual(newF, e.pc.formula)) return;  // nothing weakened

    DerivationStep step;
    step.rule = Rule::Redundancy;
    step.clauseId = targetId;
    step.premises = std::move(premises);
    step.clause = e.pc.clause;
    step.addedFormula = r2;
    step.newFormula = newF;
    step.attachLevel = level;
    if (opts_.recordSnapshots) {
      for (const auto& other : entries_) {
        if (other.loc != Loc::Retired) step.liveSnapshot.push_back(other.pc.id);
      }
    }
    log_.push_back(std::move(step));
    ++stats_.redundancySteps;

    e.pc.formula = newF;
    e.formulaLevel = std::max(e.formulaLevel, level);
    if (opts_.trace) {
      *opts_.trace << "red " << targetId << ": formula now " << toString(newF, sig_) << "\n";
    }
    if (newF->isTop()) {
      e.loc = Loc::Retired;
      ++stats_.clausesRetired;
      if (opts_.trace) *opts_.trace << "retire " << targetId << "\n";
      active_.erase(std::remove(active_.begin(), active_.end(), targetId), active_.end());
    } else if (opts_.crs && trivialJoinability(e.pc.clause, newF, params_)) {
      applyRedundancyStep(targetId, Formula::top(), 3, {});
    }
  }

  /**
   * After a performed superposition whose left premise is a positive unit
   * equation, attach the demodulation-step formula to the right premise.
   * crc admits only formulas whose ordering conjuncts folded away;
   * croc admits ordering constraints as well.
   */
  void attachAfterSup(const PartialClause& leftUsed, std::uint32_t leftId,
                      std::uint32_t rightId, const SupArgs& args) {
    if (!opts_.crc) return;
    if (leftUsed.clause.size() != 1 || !leftUsed.clause.lits[0].positive) return;
    Entry& target = entries_[rightId];
    if (target.loc == Loc::Retired) return;
    const Literal& eq = leftUsed.clause.lits[0];
    const TermRef& l = args.leftReversed ? eq.rhs : eq.lhs;
    const TermRef& r = args.leftReversed ? eq.lhs : eq.rhs;
    const Literal& rightLit = target.pc.clause.lits[args.rightLit];
    const TermRef& side = args.rightSideRhs ? rightLit.rhs : rightLit.lhs;
    TermRef lPrime = subtermAt(side, args.pos);
    if (lPrime->isVar()) return;
    FormulaRef f = demodFormula(l, r, target.pc.clause, lPrime, params_);
    if (f->isBot()) return;
    int level = hasGtAtom(f) ? 2 : 1;
    if (level == 2 && !opts_.croc) return;
    applyRedundancyStep(rightId, f, level, {leftId});
  }

  static bool hasGtAtom(const FormulaRef& f) {
    if (f->kind() == FKind::Gt) return true;
    for (const auto& k : f->kids()) {
      if (hasGtAtom(k)) return true;
    }
    return false;
  }

  // ---- inference driving ----

  void countSkip(Rule rule, SkipCond cond, int leftLevel, int rightLevel) {
    int idx = static_cast<int>(cond);
    switch (rule) {
      case Rule::Sup: ++stats_.skipSup[idx]; break;
      case Rule::EqRes: ++stats_.skipEqRes[idx]; break;
      case Rule::EqFac: ++stats_.skipEqFac[idx]; break;
      default: break;
    }
    // flag attribution: plain formula conditions go to the attaching
    // option's counter; joint case splits need the case analysis itself
    int level = 0;
    if (cond == SkipCond::C7) level = leftLevel;
    else if (cond == SkipCond::C8) level = rightLevel;
    else if ((rule == Rule::EqRes && cond == SkipCond::C2) ||
             (rule == Rule::EqFac && cond == SkipCond::C5)) {
      level = rightLevel;
    } else if (cond == SkipCond::JointC3C7 || cond == SkipCond::JointC4C8) {
      level = opts_.crs ? 3 : 2;
    }
    if (level == 1) ++stats_.discardedCrc;
    else if (level == 2) ++stats_.discardedCroc;
    else if (level == 3) ++stats_.discardedCrs;
  }

  void noteOrientation(std::uint32_t id, bool leftRole, int sideIdx, bool formulaNonBot) {
    OrientationUse& u = stats_.orientation[id];
    if (leftRole) ++u.asLeftPremise[sideIdx];
    else ++u.asRightPremise[sideIdx];
    if (formulaNonBot) ++u.withFormula[sideIdx];
  }

  CalcOptions calcOptions() const {
    return CalcOptions{opts_.crc, opts_.croc};
  }

  void runUnary(std::uint32_t givenId) {
    const Clause clause = entries_[givenId].pc.clause;  // copy: entries_ may grow
    auto selected = select(clause, params_, opts_.selection);
    CalcOptions copts = calcOptions();
    for (std::size_t li : selected) {
      if (stopped_ || refuted() || entries_[givenId].loc == Loc::Retired) return;
      if (!clause.lits[li].positive) {
        RuleApplication app = equalityResolution(entries_[givenId].pc, li, params_, copts);
        if (app.performed()) {
          ++stats_.performedEqRes;
          insertClause(*app.conclusion, Rule::EqRes, {givenId}, app.unifier, SupArgs{});
        } else {
          countSkip(Rule::EqRes, app.skip, 0, entries_[givenId].formulaLevel);
        }
      } else {
        for (std::size_t lj : selected) {
          if (lj == li || !clause.lits[lj].positive) continue;
          for (bool revI : {false, true}) {
            for (bool revJ : {false, true}) {
              if (stopped_ || refuted() || entries_[givenId].loc == Loc::Retired) return;
              EqFacArgs fargs{li, revI, lj, revJ};
              RuleApplication app = equalityFactoring(entries_[givenId].pc, fargs, params_, copts);
              if (app.performed()) {
                ++stats_.performedEqFac;
                insertClause(*app.conclusion, Rule::EqFac, {givenId}, app.unifier, SupArgs{});
              } else {
                countSkip(Rule::EqFac, app.skip, 0, entries_[givenId].formulaLevel);
              }
            }
          }
        }
      }
      checkBudget();
    }
  }

  void runPair(std::uint32_t partnerId, std::uint32_t givenId) {
    // given as right premise first: freshly attached constraints then
    // filter the remaining candidates of this activation
    supRole(partnerId, givenId);
    if (partnerId != givenId && !stopped_ && !refuted()) supRole(givenId, partnerId);
  }

  /** All superpositions with `leftId` (renamed apart) into `rightId`. */
  void supRole(std::uint32_t leftId, std::uint32_t rightId) {
    CalcOptions copts = calcOptions();
    const Clause rightClauseSnapshot = entries_[rightId].pc.clause;
    auto [leftClause, ren] = renameApart(rightClauseSnapshot, entries_[leftId].pc.clause);
    auto leftSelected = select(leftClause, params_, opts_.selection);
    auto rightSelected = select(rightClauseSnapshot, params_, opts_.selection);

    for (std::size_t li : leftSelected) {
      if (!leftClause.lits[li].positive) continue;
      for (bool rev : {false, true}) {
        for (std::size_t ri : rightSelected) {
          for (bool sideRhs : {false, true}) {
            const Literal& rlit = rightClauseSnapshot.lits[ri];
            const TermRef& sideTerm = sideRhs ? rlit.rhs : rlit.lhs;
            for (const Position& pos : nonVarPositions(sideTerm)) {
              if (stopped_ || refuted()) return;
              if (entries_[leftId].loc == Loc::Retired ||
                  entries_[rightId].loc == Loc::Retired) {
                return;
              }
              SupArgs args{li, rev, ri, sideRhs, pos};
              PartialClause leftView{leftClause, applySub(ren, entries_[leftId].pc.formula),
                                     leftId, entries_[leftId].pc.age};
              const PartialClause& rightView = entries_[rightId].pc;
              RuleApplication app = superposition(leftView, rightView, args, params_, copts);
              if (app.performed()) {
                ++stats_.performedSup;
                int lSide = (rev ? 1 : 0);
                int rSide = (sideRhs ? 1 : 0);
                noteOrientation(leftId, true, lSide, !leftView.formula->isBot());
                if (rlit.positive) {
                  noteOrientation(rightId, false, rSide, !rightView.formula->isBot());
                }
                insertClause(*app.conclusion, Rule::Sup, {leftId, rightId}, app.unifier, args);
                if (refuted()) return;
                attachAfterSup(leftView, leftId, rightId, args);
              } else {
                countSkip(Rule::Sup, app.skip, entries_[leftId].formulaLevel,
                          entries_[rightId].formulaLevel);
                if (opts_.trace && (app.skip == SkipCond::C7 || app.skip == SkipCond::C8 ||
                                    app.skip == SkipCond::JointC3C7 ||
                                    app.skip == SkipCond::JointC4C8)) {
                  *opts_.trace << "skip sup " << leftId << " into " << rightId << " ("
                               << toString(app.skip) << ")\n";
                }
              }
              checkBudget();
            }
          }
        }
      }
    }
  }

  // ---- proof extraction ----

  std::vector<DerivationStep> extractProof() const {
    if (!emptyClauseId_) throw StructuralError("no refutation to extract");
    std::vector<bool> needed(entries_.size(), false);
    std::vector<std::uint32_t> work{*emptyClauseId_};
    needed[*emptyClauseId_] = true;
    while (!work.empty()) {
      std::uint32_t id = work.back();
      work.pop_back();
      const DerivationStep& created = log_[entries_[id].createdStep];
      for (std::uint32_t p : created.premises) {
        if (!needed[p]) {
          needed[p] = true;
          work.push_back(p);
        }
      }
    }
    std::vector<DerivationStep> proof;
    for (std::uint32_t id = 0; id < entries_.size(); ++id) {
      if (needed[id]) proof.push_back(log_[entries_[id].createdStep]);
    }
    return proof;
  }

  Signature& sig_;
  ProverOptions opts_;
  KBOParams params_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> active_;
  using QItem = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> ageQ_, weightQ_;
  std::set<std::uint32_t> popped_;
  std::unordered_multimap<std::size_t, std::uint32_t> byHash_;
  std::vector<DerivationStep> log_;
  Statistics stats_;
  std::optional<std::uint32_t> emptyClauseId_;
  std::uint64_t pickTick_ = 0;
  bool stopped_ = false;
  std::string stopReason_;
  std::chrono::steady_clock::time_point start_;
};

/** Whole-run convenience wrapper. */
inline SaturationResult saturate(const std::vector<Clause>& initial, Signature& sig,
                                 const ProverOptions& opts) {
  Prover prover(sig, opts);
  for (const auto& c : initial) prover.addInput(c);
  return prover.run();
}

/** Outcome of one enumerated rule instance, for direct inspection. */
struct EnumeratedInference {
  Rule rule = Rule::Sup;
  std::uint32_t leftId = 0, rightId = 0;
  SupArgs supArgs;
  RuleApplication result;
  Clause leftClause;   // as used, i.e. renamed apart from rightClause
  Clause rightClause;
};

/**
 * Enumerates every rule instance with `given` as a premise against the
 * given active set, without mutating anything. Skips are counted into
 * `stats` per violated condition.
 */
inline std::vector<EnumeratedInference> allInferences(
    const PartialClause& given, const std::vector<PartialClause>& active,
    const KBOParams& params, const CalcOptions& copts, SelectionMode selection,
    Statistics* stats = nullptr) {
  std::vector<EnumeratedInference> out;
  auto note = [&](Rule rule, SkipCond cond) {
    if (!stats) return;
    int idx = static_cast<int>(cond);
    switch (rule) {
      case Rule::Sup: ++stats->skipSup[idx]; break;
      case Rule::EqRes: ++stats->skipEqRes[idx]; break;
      case Rule::EqFac: ++stats->skipEqFac[idx]; break;
      default: break;
    }
  };

  auto supBoth = [&](const PartialClause& left, const PartialClause& right) {
    auto [leftClause, ren] = renameApart(right.clause, left.clause);
    PartialClause leftView{leftClause, applySub(ren, left.formula), left.id, left.age};
    auto leftSelected = select(leftView.clause, params, selection);
    auto rightSelected = select(right.clause, params, selection);
    for (std::size_t li : leftSelected) {
      if (!leftView.clause.lits[li].positive) continue;
      for (bool rev : {false, true}) {
        for (std::size_t ri : rightSelected) {
          for (bool sideRhs : {false, true}) {
            const Literal& rlit = right.clause.lits[ri];
            const TermRef& sideTerm = sideRhs ? rlit.rhs : rlit.lhs;
            for (const Position& pos : nonVarPositions(sideTerm)) {
              SupArgs args{li, rev, ri, sideRhs, pos};
              EnumeratedInference inf;
              inf.rule = Rule::Sup;
              inf.leftId = leftView.id;
              inf.rightId = right.id;
              inf.supArgs = args;
              inf.result = superposition(leftView, right, args, params, copts);
              inf.leftClause = leftView.clause;
              inf.rightClause = right.clause;
              if (!inf.result.performed()) note(Rule::Sup, inf.result.skip);
              out.push_back(std::move(inf));
            }
          }
        }
      }
    }
  };

  for (const auto& partner : active) {
    supBoth(partner, given);
    supBoth(given, partner);
  }
  supBoth(given, given);

  auto selected = select(given.clause, params, selection);
  for (std::size_t li : selected) {
    if (!given.clause.lits[li].positive) {
      EnumeratedInference inf;
      inf.rule = Rule::EqRes;
      inf.leftId = inf.rightId = given.id;
      inf.result = equalityResolution(given, li, params, copts);
      if (!inf.result.performed()) note(Rule::EqRes, inf.result.skip);
      out.push_back(std::move(inf));
    } else {
      for (std::size_t lj : selected) {
        if (lj == li || !given.clause.lits[lj].positive) continue;
        for (bool revI : {false, true}) {
          for (bool revJ : {false, true}) {
            EnumeratedInference inf;
            inf.rule = Rule::EqFac;
            inf.leftId = inf.rightId = given.id;
            inf.result = equalityFactoring(given, EqFacArgs{li, revI, lj, revJ}, params, copts);
            if (!inf.result.performed()) note(Rule::EqFac, inf.result.skip);
            out.push_back(std::move(inf));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace parc
