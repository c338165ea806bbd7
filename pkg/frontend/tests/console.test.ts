// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from 'vitest';

import { ConsoleSession } from '../src/session';
import { renderDesignSetup, renderRdsGrid, utilityGridInvalid } from '../src/designView';
import { renderCohortEntry, decisionHeadline, renderDecision } from '../src/cohortView';
import { renderOcTable, renderWhatIf } from '../src/whatifView';
import { FakeServer } from './fakeServer';
import { RDS_ROWS } from './fixtures';

function session(server: FakeServer): ConsoleSession {
  return new ConsoleSession('http://api.test', undefined,
                            server.fetch as unknown as typeof fetch);
}

function submit(form: HTMLFormElement): void {
  form.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
}

async function settle(): Promise<void> {
  // let queued promise callbacks run
  for (let i = 0; i < 8; i += 1) await Promise.resolve();
  await new Promise((r) => setTimeout(r, 0));
}

describe('design setup view', () => {
  let server: FakeServer;
  let root: HTMLElement;

  beforeEach(() => {
    server = new FakeServer();
    root = document.createElement('div');
    document.body.replaceChildren(root);
  });

  it('renders the score grid identical to the API CSV, cell by cell', async () => {
    const s = session(server);
    renderDesignSetup(root, s);
    submit(root.querySelector('[data-testid=design-form]') as HTMLFormElement);
    await settle();

    const csv = await s.api.getDefaultTableCsv();
    const lines = csv.trim().split('\n');
    expect(lines[0]).toBe('n,n_tox,n_eff,rds_or_E');
    const grid = root.querySelector('[data-testid=rds-grid]') as HTMLTableElement;
    const bodyRows = Array.from(grid.querySelectorAll('tbody tr'));
    expect(bodyRows.length).toBe(lines.length - 1);
    lines.slice(1).forEach((line, i) => {
      const cells = Array.from(bodyRows[i].querySelectorAll('td'))
        .map((td) => td.textContent);
      expect(cells.join(',')).toBe(line);
    });
  });

  it('marks eliminated cells', async () => {
    const grid = renderRdsGrid([...RDS_ROWS] as never);
    const eliminated = grid.querySelectorAll('tr.eliminated');
    expect(eliminated.length).toBe(RDS_ROWS.filter((r) => r.eliminated).length);
  });

  it('shows boundaries exactly as the API sent them', async () => {
    const s = session(server);
    renderDesignSetup(root, s);
    submit(root.querySelector('[data-testid=design-form]') as HTMLFormElement);
    await settle();
    const text = (root.querySelector('[data-testid=boundaries]') as HTMLElement)
      .textContent;
    expect(text).toContain('0.276334');
    expect(text).toContain('0.418908');
  });

  it('blocks submission on an invalid utility grid with an inline error', async () => {
    const s = session(server);
    renderDesignSetup(root, s);
    const form = root.querySelector('[data-testid=design-form]') as HTMLFormElement;
    (form.querySelector('input[name=u10]') as HTMLInputElement).value = '70';
    (form.querySelector('input[name=u11]') as HTMLInputElement).value = '60';
    submit(form);
    await settle();
    const error = root.querySelector('[data-testid=design-error]') as HTMLElement;
    expect(error.textContent).toMatch(/toxicity-with-response/);
    expect(server.calls.length).toBe(0);     // nothing went to the API
  });

  it('utility ordering helper accepts the default grid', () => {
    expect(utilityGridInvalid(40, 100, 0, 60)).toBeNull();
    expect(utilityGridInvalid(40, 100, 70, 60)).toMatch(/toxicity/);
  });
});

describe('cohort entry view', () => {
  let server: FakeServer;
  let root: HTMLElement;

  beforeEach(() => {
    server = new FakeServer();
    root = document.createElement('div');
    document.body.replaceChildren(root);
  });

  it('displays the worked-example recommendation with its score badges', async () => {
    server.cohortResponse = {
      decision: {
        action: 'assign', dose: 2,
        rationale: {
          observed_rate: { x_t: 1, n: 6 },
          boundaries: { lambda_e: 0.276334, lambda_d: 0.418908 },
          comparison: 'escalate-eligible',
          candidates: [1, 2, 3],
          scores: { 1: 13, 2: 23, 3: 11 },
          eliminated: {},
        },
      },
      trial: server.trialView(),
    };
    const s = session(server);
    s.activeTrialId = 't1';
    renderCohortEntry(root, s);
    const form = root.querySelector('[data-testid=cohort-form]') as HTMLFormElement;
    (form.querySelector('input[name=dose]') as HTMLInputElement).value = '2';
    (form.querySelector('input[name=x_t]') as HTMLInputElement).value = '1';
    (form.querySelector('input[name=x_e]') as HTMLInputElement).value = '1';
    submit(form);
    await settle();

    const headline = root.querySelector('[data-testid=decision-headline]');
    expect(headline?.textContent).toBe('Continue at dose 2');
    const badges = Array.from(root.querySelectorAll('.badge'))
      .map((b) => b.textContent);
    expect(badges).toEqual(['dose 1: 13', 'dose 2: 23', 'dose 3: 11']);
    const comparison = root.querySelector('[data-testid=boundary-comparison]');
    expect(comparison?.textContent).toContain('1/6');
    expect(comparison?.textContent).toContain('escalate-eligible');
  });

  it('shows the terminate banner on a safety stop', async () => {
    server.cohortResponse = {
      decision: {
        action: 'terminate', dose: null,
        rationale: { termination_reason: 'all doses eliminated',
                     eliminated: { 1: 'safety' } },
      },
      trial: server.trialView({ status: 'terminated', recommendation: null }),
    };
    const s = session(server);
    s.activeTrialId = 't1';
    renderCohortEntry(root, s);
    const form = root.querySelector('[data-testid=cohort-form]') as HTMLFormElement;
    (form.querySelector('input[name=x_t]') as HTMLInputElement).value = '3';
    submit(form);
    await settle();
    const headline = root.querySelector('[data-testid=decision-headline]');
    expect(headline?.textContent).toBe('Terminate trial');
    expect(headline?.classList.contains('terminate')).toBe(true);
  });

  it('double submission produces exactly one recorded event', async () => {
    const s = session(server);
    s.activeTrialId = 't1';
    renderCohortEntry(root, s);
    const form = root.querySelector('[data-testid=cohort-form]') as HTMLFormElement;
    submit(form);
    submit(form);     // double click before the first response lands
    await settle();
    submit(form);     // and again after; a *new* entry intentionally differs
    await settle();

    const cohortPosts = server.calls.filter((c) => c.path.endsWith('/cohorts'));
    const keys = new Set(cohortPosts.map(
      (c) => (c.body as { event_key: string }).event_key));
    // the double click collapsed into one key -> one event server-side
    expect(server.eventsByKey.size).toBe(keys.size);
    expect(keys.size).toBeLessThan(cohortPosts.length + 1);
    expect(server.eventsByKey.size).toBe(2);   // double click + deliberate new entry
  });

  it('override needs explicit confirmation', async () => {
    const s = session(server);
    s.activeTrialId = 't1';
    renderCohortEntry(root, s);
    const form = root.querySelector('[data-testid=cohort-form]') as HTMLFormElement;
    (form.querySelector('input[name=override]') as HTMLInputElement).checked = true;
    submit(form);
    await settle();
    expect((root.querySelector('[data-testid=cohort-error]') as HTMLElement)
      .textContent).toMatch(/confirmation/);
    expect(server.calls.length).toBe(0);
  });

  it('headline wording tracks the entered dose', () => {
    const mk = (dose: number): never => ({ action: 'assign', dose,
                                           rationale: {} } as never);
    expect(decisionHeadline(mk(2), 2)).toBe('Continue at dose 2');
    expect(decisionHeadline(mk(3), 2)).toBe('Escalate to dose 3');
    expect(decisionHeadline(mk(1), 2)).toBe('De-escalate to dose 1');
  });

  it('renders elimination flags in the rationale', () => {
    const decision = {
      action: 'assign' as const, dose: 1,
      rationale: { eliminated: { 3: 'safety' }, candidates: [1] },
    };
    const box = renderDecision(decision, 1);
    expect(box.querySelector('[data-testid=elimination-flags]')?.textContent)
      .toBe('eliminated: dose 3 (safety)');
  });
});

describe('what-if view', () => {
  const ocFixture = {
    n_doses: 3, n_sim: 1000, seed: 1,
    selection_pct: [1.2, 2.3, 0.5],
    none_selected_pct: 96.0,
    avg_patients: [4.1, 2.2, 0.4],
    avg_total_patients: 6.7,
    early_termination_pct: 95.5,
    true_best_dose: 1,
    avg_patients_at_true_best: 4.1,
  };

  let server: FakeServer;
  let root: HTMLElement;

  beforeEach(() => {
    server = new FakeServer();
    server.simulationResults.set('*', ocFixture);
    root = document.createElement('div');
    document.body.replaceChildren(root);
  });

  it('renders the job result and the dominant none bar', async () => {
    const s = session(server);
    renderWhatIf(root, s);
    submit(root.querySelector('[data-testid=whatif-form]') as HTMLFormElement);
    await settle();
    await settle();
    const nonePct = root.querySelector('[data-testid=none-pct]');
    expect(nonePct?.textContent).toBe('96.00');
    const bars = Array.from(root.querySelectorAll(
      '[data-testid=selection-bars] .bar')) as HTMLElement[];
    const widths = bars.map((b) => Number.parseFloat(b.style.width));
    const labels = bars.map((b) => b.dataset.label);
    expect(labels[widths.indexOf(Math.max(...widths))]).toBe('none');
  });

  it('same seed renders an identical table', () => {
    const a = renderOcTable(ocFixture as never).innerHTML;
    const b = renderOcTable(ocFixture as never).innerHTML;
    expect(a).toBe(b);
  });

  it('sends the sketched scenario to the API untouched', async () => {
    const s = session(server);
    renderWhatIf(root, s);
    const form = root.querySelector('[data-testid=whatif-form]') as HTMLFormElement;
    (form.querySelector('input[name=pi_t]') as HTMLInputElement).value =
      '0.8, 0.8, 0.8';
    submit(form);
    await settle();
    await settle();
    const post = server.calls.find((c) => c.path === '/v1/simulations');
    expect((post?.body as { scenario: { pi_t: number[] } }).scenario.pi_t)
      .toEqual([0.8, 0.8, 0.8]);
  });
});
