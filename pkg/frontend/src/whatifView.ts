/**
 * What-if view: sketch a truth scenario, run a simulation job server-side,
 * and render the operating characteristics when the poll completes.
 */

import { SimulationResult } from './api.js';
import { ConsoleSession } from './session.js';
import { clear, el } from './dom.js';

export function parseRates(text: string): number[] {
  return text.split(',').map((s) => Number(s.trim())).filter((v) => !Number.isNaN(v));
}

export function renderOcTable(result: SimulationResult): HTMLElement {
  const wrap = el('div', { 'data-testid': 'oc-result' });
  const table = el('table', { class: 'oc-table', 'data-testid': 'oc-table' });
  table.append(el('thead', {}, [el('tr', {}, [
    el('th', { text: 'dose' }),
    el('th', { text: 'selection %' }),
    el('th', { text: 'avg patients' }),
  ])]));
  const body = el('tbody');
  for (let j = 0; j < result.n_doses; j += 1) {
    body.append(el('tr', {}, [
      el('td', { text: String(j + 1) }),
      el('td', { text: result.selection_pct[j].toFixed(2) }),
      el('td', { text: result.avg_patients[j].toFixed(2) }),
    ]));
  }
  body.append(el('tr', { class: 'none-row' }, [
    el('td', { text: 'none' }),
    el('td', { 'data-testid': 'none-pct',
               text: result.none_selected_pct.toFixed(2) }),
    el('td', { text: '' }),
  ]));
  table.append(body);
  wrap.append(table);

  const bars = el('div', { class: 'selection-bars', 'data-testid': 'selection-bars' });
  const entries: [string, number][] = result.selection_pct
    .map((v, j) => [`dose ${j + 1}`, v] as [string, number]);
  entries.push(['none', result.none_selected_pct]);
  for (const [label, pct] of entries) {
    bars.append(el('div', {
      class: 'bar',
      'data-label': label,
      style: `width: ${pct}%`,
      text: `${label}: ${pct.toFixed(1)}%`,
    }));
  }
  wrap.append(bars);
  wrap.append(el('p', {
    'data-testid': 'oc-summary',
    text: `average total ${result.avg_total_patients.toFixed(2)} patients; ` +
      `early termination ${result.early_termination_pct.toFixed(2)}%; ` +
      `seed ${result.seed}, ${result.n_sim} replications`,
  }));
  return wrap;
}

export function renderWhatIf(root: HTMLElement, session: ConsoleSession): void {
  clear(root);
  const form = el('form', { 'data-testid': 'whatif-form' });
  const piT = el('input', { name: 'pi_t', value: '0.05, 0.15, 0.3' });
  const piE = el('input', { name: 'pi_e', value: '0.2, 0.4, 0.5' });
  const psi = el('input', { name: 'psi', value: '0' });
  const nSim = el('input', { name: 'n_sim', value: '1000' });
  const seed = el('input', { name: 'seed', value: '1' });
  form.append(
    el('label', { class: 'field' }, ['true toxicity rates ', piT]),
    el('label', { class: 'field' }, ['true response rates ', piE]),
    el('label', { class: 'field' }, ['association psi ', psi]),
    el('label', { class: 'field' }, ['replications ', nSim]),
    el('label', { class: 'field' }, ['seed ', seed]),
    el('button', { type: 'submit', text: 'Run what-if' }),
  );
  const statusLine = el('p', { 'data-testid': 'job-status' });
  const mount = el('div');
  root.append(form, statusLine, mount);

  form.addEventListener('submit', (ev) => {
    ev.preventDefault();
    void (async () => {
      const body = {
        scenario: {
          pi_t: parseRates(piT.value),
          pi_e: parseRates(piE.value),
          psi: Number(psi.value),
        },
        strategy: 'efficacy-integrated',
        design: {},
        n_sim: Number(nSim.value),
        seed: Number(seed.value),
      };
      statusLine.textContent = 'submitting…';
      const { job_id } = await session.api.submitSimulation(body);
      const job = await session.api.pollSimulation(job_id, 250, (j) => {
        statusLine.textContent = `job ${job_id}: ${j.status}`;
      });
      clear(mount);
      if (job.status === 'done' && job.result) {
        mount.append(renderOcTable(job.result));
      } else {
        mount.append(el('p', { class: 'error',
                              text: job.error ?? 'simulation failed' }));
      }
    })();
  });
}
