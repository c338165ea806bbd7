/**
 * In-memory fetch stub that mimics the /v1 surface the console touches.
 * Tests inspect `calls` and `events` to verify what went over the wire.
 */

import { RDS_ROWS, RDS_CSV } from './fixtures';

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export class FakeServer {
  calls: RecordedCall[] = [];
  eventsByKey = new Map<string, unknown>();
  cohortResponse: unknown = null;
  simulationResults = new Map<string, unknown>();
  private jobSeq = 0;
  pendingJobBodies: unknown[] = [];

  trialView(overrides: Record<string, unknown> = {}): Record<string, unknown> {
    return {
      trial_id: 't1',
      status: 'enrolling',
      created_at: '2026-01-01T00:00:00+00:00',
      warnings: [],
      recommendation: 1,
      final_obd: null,
      state: [
        { dose: 1, n: 3, x_t: 0, x_e: 3, eliminated: false,
          elimination_reason: null },
        { dose: 2, n: 0, x_t: 0, x_e: 0, eliminated: false,
          elimination_reason: null },
      ],
      n_events: 1,
      ...overrides,
    };
  }

  fetch = async (url: string, init: RequestInit = {}): Promise<Response> => {
    const method = (init.method ?? 'GET').toUpperCase();
    const parsed = new URL(url, 'http://x');
    const path = parsed.pathname + parsed.search;
    const body = init.body ? JSON.parse(init.body as string) : null;
    this.calls.push({ method, path, body });

    const json = (payload: unknown, status = 200) =>
      new Response(JSON.stringify(payload), {
        status, headers: { 'content-type': 'application/json' } });

    if (path.startsWith('/v1/designs/boundaries')) {
      return json({ target: '0.350000', phi1: '0.210000', phi2: '0.490000',
                    lambda_e: '0.276334', lambda_d: '0.418908' });
    }
    if (path.startsWith('/v1/designs/boin12/table')) {
      if (path.includes('fmt=csv')) {
        return new Response(RDS_CSV, {
          status: 200, headers: { 'content-type': 'text/csv' } });
      }
      return json({ rows: RDS_ROWS });
    }
    if (path.startsWith('/v1/designs/merit/search')) {
      return json({ n: 24, m_t: 7, m_e: 5, achieved_t1e: '0.170625',
                    achieved_power: '0.809658' });
    }
    if (path.match(/^\/v1\/trials\/[^/]+\/cohorts$/) && method === 'POST') {
      const key = (body as { event_key: string }).event_key;
      if (!this.eventsByKey.has(key)) {
        this.eventsByKey.set(key, body);
      }
      return json(this.cohortResponse ?? {
        decision: { action: 'assign', dose: 1, rationale: {} },
        trial: this.trialView(),
      });
    }
    if (path.match(/^\/v1\/trials\/[^/]+$/) && method === 'GET') {
      return json(this.trialView());
    }
    if (path === '/v1/simulations' && method === 'POST') {
      this.jobSeq += 1;
      const id = `job${this.jobSeq}`;
      this.pendingJobBodies.push(body);
      return json({ job_id: id, status: 'running' }, 202);
    }
    if (path.match(/^\/v1\/simulations\/job\d+$/)) {
      const id = path.split('/').pop() as string;
      const result = this.simulationResults.get(id) ??
        this.simulationResults.get('*');
      return json({ status: 'done', result });
    }
    return json({ code: 'not-found', message: `no route ${path}`,
                  field: null }, 404);
  };
}
