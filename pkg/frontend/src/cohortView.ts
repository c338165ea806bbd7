/**
 * Cohort-entry view: record the latest cohort's outcomes and show the
 * engine's decision with its full rationale.
 *
 * Submissions carry a client-generated event key, minted once per form fill:
 * a double click resubmits the same key, which the server treats as the same
 * event, so exactly one cohort is recorded.
 */

import { Decision, TrialView } from './api.js';
import { ConsoleSession } from './session.js';
import { clear, el, numberInput } from './dom.js';

export function decisionHeadline(decision: Decision, enteredDose: number): string {
  if (decision.action === 'terminate') return 'Terminate trial';
  const dose = decision.dose as number;
  if (dose === enteredDose) return `Continue at dose ${dose}`;
  return dose > enteredDose ? `Escalate to dose ${dose}`
                            : `De-escalate to dose ${dose}`;
}

function freshKey(): string {
  if (typeof crypto !== 'undefined' && 'randomUUID' in crypto) {
    return crypto.randomUUID();
  }
  return `ek-${Date.now()}-${Math.random().toString(36).slice(2)}`;
}

export function renderAllocation(trial: TrialView): HTMLElement {
  const wrap = el('div', { class: 'allocation', 'data-testid': 'allocation' });
  const maxN = Math.max(1, ...trial.state.map((s) => s.n));
  for (const s of trial.state) {
    const bar = el('div', {
      class: 'bar' + (s.eliminated ? ' eliminated' : ''),
      'data-dose': String(s.dose),
      style: `width: ${(100 * s.n) / maxN}%`,
      text: `dose ${s.dose}: ${s.n} treated, ${s.x_t} tox, ${s.x_e} resp` +
            (s.eliminated ? ` (eliminated: ${s.elimination_reason})` : ''),
    });
    wrap.append(bar);
  }
  return wrap;
}

export function renderDecision(decision: Decision, enteredDose: number): HTMLElement {
  const box = el('div', { 'data-testid': 'decision' });
  const headline = decisionHeadline(decision, enteredDose);
  box.append(el('h3', {
    class: decision.action === 'terminate' ? 'banner terminate' : 'banner',
    'data-testid': 'decision-headline',
    text: headline,
  }));
  const r = decision.rationale as {
    observed_rate?: { x_t: number; n: number };
    boundaries?: { lambda_e: number; lambda_d: number };
    comparison?: string;
    candidates?: number[];
    scores?: Record<string, number>;
    eliminated?: Record<string, string>;
    exploration_override?: number;
    termination_reason?: string;
  };
  if (r.observed_rate && r.boundaries) {
    box.append(el('p', {
      'data-testid': 'boundary-comparison',
      text: `observed ${r.observed_rate.x_t}/${r.observed_rate.n} vs ` +
        `boundaries (${r.boundaries.lambda_e.toFixed(3)}, ` +
        `${r.boundaries.lambda_d.toFixed(3)}): ${r.comparison ?? ''}`,
    }));
  }
  if (r.candidates) {
    box.append(el('p', {
      'data-testid': 'candidates',
      text: `candidate doses: ${r.candidates.join(', ') || 'none'}`,
    }));
  }
  if (r.scores) {
    const badges = el('div', { class: 'badges', 'data-testid': 'rds-badges' });
    for (const [dose, score] of Object.entries(r.scores)) {
      badges.append(el('span', {
        class: 'badge',
        'data-dose': dose,
        text: `dose ${dose}: ${score}`,
      }));
    }
    box.append(badges);
  }
  if (r.eliminated && Object.keys(r.eliminated).length > 0) {
    box.append(el('p', {
      'data-testid': 'elimination-flags',
      text: 'eliminated: ' + Object.entries(r.eliminated)
        .map(([d, why]) => `dose ${d} (${why})`).join('; '),
    }));
  }
  if (r.exploration_override !== undefined) {
    box.append(el('p', { text:
      `exploration override: next untried dose ${r.exploration_override}` }));
  }
  if (r.termination_reason) {
    box.append(el('p', { 'data-testid': 'termination-reason',
                         text: r.termination_reason }));
  }
  return box;
}

export function renderCohortEntry(root: HTMLElement, session: ConsoleSession): void {
  clear(root);
  const status = el('div', { 'data-testid': 'trial-status' });
  const form = el('form', { 'data-testid': 'cohort-form' });
  form.append(
    numberInput('dose', '1', 'dose level'),
    numberInput('size', '3', 'cohort size'),
    numberInput('x_t', '0', 'toxicities'),
    numberInput('x_e', '0', 'responses'),
    el('label', { class: 'field' }, [
      'override recommendation ',
      el('input', { type: 'checkbox', name: 'override' }),
    ]),
    el('label', { class: 'field' }, [
      'confirm override ',
      el('input', { type: 'checkbox', name: 'confirm_override',
                    'data-testid': 'confirm-override' }),
    ]),
    el('button', { type: 'submit', text: 'Record cohort',
                   'data-testid': 'submit-cohort' }),
  );
  const error = el('p', { class: 'error', 'data-testid': 'cohort-error' });
  const decisionMount = el('div');
  const allocationMount = el('div');
  root.append(status, form, error, decisionMount, allocationMount);

  if (session.trial) {
    status.textContent = `trial ${session.trial.trial_id}: ` +
      `${session.trial.status}; recommended dose ` +
      `${session.trial.recommendation ?? '—'}`;
  }

  let eventKey = freshKey();
  let inFlight = false;

  form.addEventListener('submit', (ev) => {
    ev.preventDefault();
    if (!session.activeTrialId) {
      error.textContent = 'no active trial';
      return;
    }
    const data = new FormData(form);
    const override = data.get('override') === 'on';
    if (override && data.get('confirm_override') !== 'on') {
      error.textContent = 'override requires explicit confirmation';
      return;
    }
    if (inFlight) return;         // same key would be resent anyway
    inFlight = true;
    const submission = {
      dose: Number(data.get('dose')),
      size: Number(data.get('size')),
      x_t: Number(data.get('x_t')),
      x_e: Number(data.get('x_e')),
      override,
      event_key: eventKey,
    };
    void session.api.postCohort(session.activeTrialId, submission)
      .then(({ decision, trial }) => {
        session.trial = trial;
        error.textContent = '';
        clear(decisionMount);
        decisionMount.append(renderDecision(decision, submission.dose));
        clear(allocationMount);
        allocationMount.append(renderAllocation(trial));
        status.textContent = `trial ${trial.trial_id}: ${trial.status}; ` +
          `recommended dose ${trial.recommendation ?? '—'}`;
        eventKey = freshKey();    // next distinct entry gets a new key
      })
      .catch((err: Error) => {
        error.textContent = err.message;
      })
      .finally(() => {
        inFlight = false;
      });
  });
}
