/**
 * Design-setup view: configure the efficacy-integrated design and the
 * randomized-stage spec, then render the server's boundaries, score table,
 * and solved design.
 *
 * The score grid marks "E" cells; submission is blocked inline when the
 * utility grid violates outcome monotonicity (the server would reject it
 * too — this is a courtesy check, not client-side statistics).
 */

import { RdsRow } from './api.js';
import { ConsoleSession } from './session.js';
import { clear, el, numberInput } from './dom.js';

export function utilityGridInvalid(u00: number, u01: number, u10: number,
                                   u11: number): string | null {
  if ([u00, u01, u10, u11].some((v) => v < 0 || v > 100)) {
    return 'utility scores must lie on the 0-100 scale';
  }
  if (u10 > u11) return 'toxicity-with-response cannot score below toxicity-alone';
  if (u10 > u00 || u11 > u01 || u00 > u01) {
    return 'utility grid violates outcome ordering';
  }
  return null;
}

export function renderRdsGrid(rows: RdsRow[]): HTMLTableElement {
  const table = el('table', { class: 'rds-grid', 'data-testid': 'rds-grid' });
  const head = el('tr', {}, [
    el('th', { text: 'n' }), el('th', { text: 'n_tox' }),
    el('th', { text: 'n_eff' }), el('th', { text: 'score' }),
  ]);
  table.append(el('thead', {}, [head]));
  const body = el('tbody');
  const sorted = [...rows].sort((a, b) =>
    a.n - b.n || a.n_tox - b.n_tox || a.n_eff - b.n_eff);
  for (const row of sorted) {
    const tr = el('tr', row.eliminated ? { class: 'eliminated' } : {});
    tr.append(el('td', { text: String(row.n) }));
    tr.append(el('td', { text: String(row.n_tox) }));
    tr.append(el('td', { text: String(row.n_eff) }));
    tr.append(el('td', { text: row.eliminated ? 'E' : String(row.rds) }));
    body.append(tr);
  }
  table.append(body);
  return table;
}

export function renderDesignSetup(root: HTMLElement, session: ConsoleSession): void {
  clear(root);
  const form = el('form', { 'data-testid': 'design-form' });
  form.append(
    numberInput('phi_t', '0.35', 'toxicity upper limit'),
    numberInput('phi_e', '0.25', 'efficacy lower limit'),
    numberInput('n_star', '6', 'exploration cutoff N*'),
    numberInput('cohort_size', '3', 'cohort size'),
    el('fieldset', { class: 'utility-grid' }, [
      el('legend', { text: 'utility scores u[tox][eff]' }),
      numberInput('u00', '40', 'no tox, no response'),
      numberInput('u01', '100', 'no tox, response'),
      numberInput('u10', '0', 'tox, no response'),
      numberInput('u11', '60', 'tox, response'),
    ]),
    el('button', { type: 'submit', text: 'Load design' }),
  );
  const error = el('p', { class: 'error', 'data-testid': 'design-error' });
  const results = el('div', { 'data-testid': 'design-results' });
  root.append(form, error, results);

  form.addEventListener('submit', (ev) => {
    ev.preventDefault();
    void (async () => {
      const data = new FormData(form);
      const num = (k: string) => Number(data.get(k));
      const invalid = utilityGridInvalid(num('u00'), num('u01'),
                                         num('u10'), num('u11'));
      error.textContent = invalid ?? '';
      if (invalid) return;

      const phiT = num('phi_t');
      const boundaries = await session.api.getBoundaries(phiT);
      const rows = (await session.api.getDefaultTable()).rows;
      session.cachedTable = rows;

      clear(results);
      results.append(el('p', {
        'data-testid': 'boundaries',
        text: `escalation boundary ${boundaries.lambda_e} / ` +
              `de-escalation boundary ${boundaries.lambda_d}`,
      }));
      results.append(renderRdsGrid(rows));
    })();
  });
}

export function renderMeritForm(root: HTMLElement, session: ConsoleSession): void {
  const form = el('form', { 'data-testid': 'merit-form' });
  form.append(
    numberInput('phi_t0', '0.4', 'null toxicity rate'),
    numberInput('phi_t1', '0.2', 'acceptable toxicity rate'),
    numberInput('phi_e0', '0.1', 'null efficacy rate'),
    numberInput('phi_e1', '0.3', 'acceptable efficacy rate'),
    numberInput('alpha', '0.2', 'type I error budget'),
    numberInput('beta_power', '0.7', 'power target'),
    el('button', { type: 'submit', text: 'Solve randomized stage' }),
  );
  const out = el('p', { 'data-testid': 'merit-result' });
  root.append(form, out);

  form.addEventListener('submit', (ev) => {
    ev.preventDefault();
    void (async () => {
      const data = new FormData(form);
      const spec: Record<string, number> = {};
      for (const key of ['phi_t0', 'phi_t1', 'phi_e0', 'phi_e1', 'alpha',
                         'beta_power']) {
        spec[key] = Number(data.get(key));
      }
      const sol = await session.api.meritSearch(spec);
      out.textContent = `randomize ${sol.n} per dose; admissible if ` +
        `efficacy >= ${sol.m_e} and toxicity <= ${sol.m_t} ` +
        `(error ${sol.achieved_t1e}, power ${sol.achieved_power})`;
    })();
  });
}
