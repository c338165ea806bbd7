// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from 'vitest';

import { mountConsole } from '../src/main';
import { ConsoleSession } from '../src/session';
import { FakeServer } from './fakeServer';

describe('console shell', () => {
  let root: HTMLElement;

  beforeEach(() => {
    root = document.createElement('div');
    document.body.replaceChildren(root);
  });

  it('mounts with three tabs and the design view active', () => {
    mountConsole(root, 'http://api.test');
    const tabs = Array.from(root.querySelectorAll('nav button'))
      .map((b) => b.textContent);
    expect(tabs).toEqual(['design setup', 'cohort entry', 'what-if']);
    expect(root.querySelector('[data-testid=design-form]')).not.toBeNull();
    expect(root.querySelector('[data-testid=merit-form]')).not.toBeNull();
  });

  it('switches views on tab clicks', () => {
    mountConsole(root, 'http://api.test');
    (root.querySelector('button[data-tab="cohort entry"]') as HTMLElement).click();
    expect(root.querySelector('[data-testid=cohort-form]')).not.toBeNull();
    expect(root.querySelector('[data-testid=design-form]')).toBeNull();
    (root.querySelector('button[data-tab="what-if"]') as HTMLElement).click();
    expect(root.querySelector('[data-testid=whatif-form]')).not.toBeNull();
  });
});

describe('console session', () => {
  it('tracks the active trial from API responses only', async () => {
    const server = new FakeServer();
    const session = new ConsoleSession('http://api.test', undefined,
                                       server.fetch as unknown as typeof fetch);
    const trial = await session.openTrial('t1');
    expect(session.activeTrialId).toBe('t1');
    expect(trial.recommendation).toBe(1);
    const again = await session.refreshTrial();
    expect(again?.trial_id).toBe('t1');
    expect(server.calls.filter((c) => c.path === '/v1/trials/t1').length).toBe(2);
  });

  it('caches the design table across calls', async () => {
    const server = new FakeServer();
    const session = new ConsoleSession('http://api.test', undefined,
                                       server.fetch as unknown as typeof fetch);
    const a = await session.designTable();
    const b = await session.designTable();
    expect(b).toBe(a);
    expect(server.calls.filter(
      (c) => c.path.startsWith('/v1/designs/boin12/table')).length).toBe(1);
  });

  it('sends the bearer token on every request', async () => {
    const seen: string[] = [];
    const fetchSpy = async (url: string, init: RequestInit = {}) => {
      seen.push((init.headers as Record<string, string>).authorization ?? '');
      return new Response(JSON.stringify({ rows: [] }), {
        status: 200, headers: { 'content-type': 'application/json' } });
    };
    const session = new ConsoleSession('http://api.test', 'sekrit',
                                       fetchSpy as unknown as typeof fetch);
    await session.api.getDefaultTable();
    expect(seen).toEqual(['Bearer sekrit']);
  });
});
